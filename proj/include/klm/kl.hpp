#pragma once

#include <vector>

#include "klm/lattice.hpp"
#include "klm/matroid.hpp"
#include "klm/poly.hpp"

namespace klm {

enum class KLMethod { lattice, uniform_type, braid_type, closed_form, functional_equation };

inline const char* to_string(KLMethod m) {
    switch (m) {
        case KLMethod::lattice: return "lattice";
        case KLMethod::uniform_type: return "uniform_type";
        case KLMethod::braid_type: return "braid_type";
        case KLMethod::closed_form: return "closed_form";
        case KLMethod::functional_equation: return "functional_equation";
    }
    return "?";
}

struct KLResult {
    IntPolynomial polynomial;
    int matroid_rank = 0;
    KLMethod method = KLMethod::closed_form;
};

struct DegreeSplitInput {
    int rank;           // positive
    IntPolynomial rhs;  // R(t) = t^rank P(1/t) - P(t)
};

// Unique P with deg P < rank/2 and t^rank P(1/t) - P(t) = R(t). The
// antisymmetry R(t) = -t^rank R(1/t) pins the low half of R to the high
// half; P is read off the high half.
inline IntPolynomial degree_split(const DegreeSplitInput& in) {
    const int r = in.rank;
    if (r <= 0) throw std::domain_error("degree_split: rank must be positive");
    if (in.rhs.degree() > r) throw std::domain_error("degree_split: rhs degree exceeds rank");
    for (int i = 0; 2 * i <= r; ++i)
        if (in.rhs.coeff(i) != -in.rhs.coeff(r - i))
            throw std::domain_error("degree_split: rhs is not palindromically antisymmetric");
    std::vector<Integer> p;
    for (int i = 0; 2 * i < r; ++i) p.push_back(in.rhs.coeff(r - i));
    IntPolynomial out(std::move(p));
    if (out.reversed(r) - out != in.rhs)
        throw std::domain_error("degree_split: reconstructed polynomial fails the defining identity");
    return out;
}

// Coefficients of Eq-style closed form for U_{1,d}:
// sum_i 1/(i+1) C(d-i-1, i) C(d+1, i) t^i.
inline IntPolynomial kl_uniform_1d_closed(int d) {
    if (d < 1) throw std::invalid_argument("kl_uniform_1d_closed: d must be >= 1");
    IntPolynomial out;
    for (int i = 0; 2 * i <= d - 1; ++i) {
        Integer num = binomial(d - i - 1, i) * binomial(d + 1, i);
        Integer q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), Integer(i + 1).get_mpz_t());
        if (rem != 0)
            throw std::domain_error("kl_uniform_1d_closed: non-integral coefficient");
        out.set_coeff(i, q);
    }
    return out;
}

// Dyck-path closed form: coefficient of t^k counts Dyck paths of semilength
// n with k long ascents.
inline IntPolynomial kl_thagomizer_closed(int n) {
    if (n < 0) throw std::invalid_argument("kl_thagomizer_closed: n must be >= 0");
    IntPolynomial out;
    out.set_coeff(0, 1);  // the staircase path has no long ascent
    for (int k = 1; 2 * k <= n; ++k) {
        Integer inner = 0;
        for (int j = 2 * k; j <= n; ++j)
            inner += binomial(j - k - 1, k - 1) * binomial(n + 1 - k, n - j);
        Integer num = binomial(n + 1, k) * inner;
        Integer q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), Integer(n + 1).get_mpz_t());
        if (rem != 0)
            throw std::domain_error("kl_thagomizer_closed: non-integral coefficient");
        out.set_coeff(k, q);
    }
    return out;
}

inline IntPolynomial kl_k2n(int n) {
    if (n < 2) throw std::invalid_argument("kl_k2n: n must be >= 2");
    IntPolynomial out = kl_thagomizer_closed(n);
    out.set_coeff(1, out.coeff(1) + 1);
    return out;
}

// Specialized recursion for U_{m,d}: proper nonempty flats are the subsets
// of size k < d, with Boolean localization (t-1)^k and restriction U_{m,d-k}.
inline KLResult kl_uniform_type(int m, int d) {
    if (m < 0 || d < 0) throw std::invalid_argument("kl_uniform_type: negative parameter");
    std::vector<IntPolynomial> P(d + 1);
    P[0] = IntPolynomial::constant(1);
    IntPolynomial tm1({-1, 1});
    for (int k = 1; k <= d; ++k) {
        IntPolynomial rhs = chi_uniform(m, k);
        IntPolynomial pw = IntPolynomial::constant(1);
        for (int j = 1; j <= k - 1; ++j) {
            pw *= tm1;
            rhs += binomial(m + k, j) * pw * P[k - j];
        }
        P[k] = degree_split({k, rhs});
    }
    return {P[d], d, KLMethod::uniform_type};
}

// Specialized recursion for the braid matroid B_n over set-partition types:
// a flat of type lambda has localization with chi = prod chi_{B_{lambda_i}}
// and restriction B_{#blocks}.
inline KLResult kl_braid_type(int n) {
    if (n < 1 || n > 25) throw std::invalid_argument("kl_braid_type: n out of range [1,25]");
    std::vector<IntPolynomial> P(n + 1);
    std::vector<IntPolynomial> chi(n + 1);
    for (int k = 1; k <= n; ++k) chi[k] = chi_braid(k);
    P[1] = IntPolynomial::constant(1);
    std::vector<int> parts;
    for (int k = 2; k <= n; ++k) {
        IntPolynomial rhs;
        // enumerate partitions of k other than 1^k, largest part first
        auto rec = [&](auto&& self, int rest, int maxp) -> void {
            if (rest == 0) {
                if (static_cast<int>(parts.size()) == k) return;  // 1^k is the bottom flat
                // number of set partitions of this type
                Integer count = factorial(k);
                int run = 1;
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    count /= factorial(parts[i]);
                    if (i + 1 < parts.size() && parts[i + 1] == parts[i])
                        ++run;
                    else {
                        count /= factorial(run);
                        run = 1;
                    }
                }
                IntPolynomial term = IntPolynomial::constant(count);
                for (int p : parts) term *= chi[p];
                rhs += term * P[parts.size()];
                return;
            }
            for (int p = std::min(rest, maxp); p >= 1; --p) {
                parts.push_back(p);
                self(self, rest - p, p);
                parts.pop_back();
            }
        };
        rec(rec, k, k);
        P[k] = degree_split({k - 1, rhs});
    }
    return {P[n], n - 1, KLMethod::braid_type};
}

// Generic DP over one lattice: P for the interval [F, top] of every flat F,
// computed by decreasing rank. Using S(H) = sum_{G >= H} t^{rk G} P_G, the
// right-hand side for F is t^{-rk F}(S(F) - t^{rk F}P_F) plus
// sum_{H > F} mu(F,H) t^{-rk H} S(H).
inline IntPolynomial kl_from_lattice(const FlatLattice& l) {
    const int N = l.size(), r = l.rank();
    std::vector<IntPolynomial> P(N);
    std::vector<TPoly> S(N);
    for (int f = N - 1; f >= 0; --f) {
        const int rf = l.flat(f).rank;
        const auto& up = l.upper_set(f);
        if (rf == r) {
            P[f] = IntPolynomial::constant(1);
            S[f] = TPoly::monomial(r);
            continue;
        }
        TPoly sprime;
        for (std::size_t a = 1; a < up.size(); ++a)
            sprime += TPoly(P[up[a]]).shifted(l.flat(up[a]).rank);
        auto mu = l.mobius_from(f);
        TPoly rt = sprime.shifted(-rf);
        for (std::size_t a = 1; a < up.size(); ++a) {
            if (mu[a] == 0) continue;
            rt += Rational(mu[a]) * S[up[a]].shifted(-l.flat(up[a]).rank);
        }
        P[f] = degree_split({r - rf, rt.to_int_polynomial()});
        S[f] = sprime + TPoly(P[f]).shifted(rf);
    }
    return P[0];
}

// Forced lattice path (simplification first); the dispatching entry point
// below prefers family forms.
inline KLResult kl_polynomial_lattice(const Matroid& m, std::size_t flat_cap = 1'000'000) {
    Matroid s = simplify(m);
    return {kl_from_lattice(FlatLattice(s, flat_cap)), s.rank(), KLMethod::lattice};
}

namespace detail {
inline int method_severity(KLMethod m) {
    switch (m) {
        case KLMethod::closed_form: return 0;
        case KLMethod::uniform_type:
        case KLMethod::braid_type:
        case KLMethod::functional_equation: return 1;
        case KLMethod::lattice: return 2;
    }
    return 2;
}
}  // namespace detail

inline KLResult kl_polynomial(const Matroid& m, std::size_t flat_cap = 1'000'000) {
    const FamilyTag& t = m.tag();
    if (t.family == Family::uniform) {
        if (t.p1 == 0 || t.p2 == 0)
            return {IntPolynomial::constant(1), m.rank(), KLMethod::closed_form};
        if (t.p1 == 1)
            return {kl_uniform_1d_closed(t.p2), m.rank(), KLMethod::closed_form};
        return kl_uniform_type(t.p1, t.p2);
    }
    if (t.family == Family::braid) return kl_braid_type(t.p1);
    if (t.family == Family::thagomizer)
        return {kl_thagomizer_closed(t.p1), m.rank(), KLMethod::closed_form};
    if (t.family == Family::k2n && t.p1 >= 2)
        return {kl_k2n(t.p1), m.rank(), KLMethod::closed_form};
    if (const auto* ds = std::get_if<DirectSumBacking>(&m.backing())) {
        KLResult a = kl_polynomial(Matroid(ds->left), flat_cap);
        KLResult b = kl_polynomial(Matroid(ds->right), flat_cap);
        KLMethod method = detail::method_severity(a.method) >= detail::method_severity(b.method)
                              ? a.method
                              : b.method;
        return {a.polynomial * b.polynomial, a.matroid_rank + b.matroid_rank, method};
    }
    return kl_polynomial_lattice(m, flat_cap);
}

// Q_M(t) = t^{rank-1} P_M(-t^{-2}); a polynomial precisely when
// deg P <= (rank-1)/2.
inline IntPolynomial q_transform(const IntPolynomial& p, int rank) {
    if (2 * p.degree() > rank - 1)
        throw std::domain_error("q_transform: degree exceeds (rank-1)/2");
    IntPolynomial out;
    for (int i = 0; i <= p.degree(); ++i) {
        Integer c = p.coeff(i);
        if (i & 1) c = -c;
        if (c != 0) out.set_coeff(rank - 1 - 2 * i, c);
    }
    return out;
}

// deg P_M attains the bound floor((rk M - 1)/2), or rk M = 0.
inline bool is_non_degenerate(const KLResult& r) {
    if (r.matroid_rank == 0) return true;
    return r.polynomial.degree() == (r.matroid_rank - 1) / 2;
}

inline bool is_non_degenerate(const Matroid& m) { return is_non_degenerate(kl_polynomial(m)); }

// (d+1)! times the coefficientwise multiplier 1/((i+1)!(d+1-i)!) applied to
// h_d(t) = sum_i C(d-i-1, i) t^i reproduces the U_{1,d} closed form.
inline bool gamma_multiplier_identity(int d) {
    if (d < 1) throw std::invalid_argument("gamma_multiplier_identity: d must be >= 1");
    IntPolynomial expect = kl_uniform_1d_closed(d);
    TPoly got;
    for (int i = 0; 2 * i <= d - 1; ++i) {
        Rational c(binomial(d - i - 1, i));
        c *= ratio(factorial(d + 1), factorial(i + 1) * factorial(d + 1 - i));
        got.add_to(i, c);
    }
    return got.is_integer_polynomial() && got.to_int_polynomial() == expect;
}

}  // namespace klm
