#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klm/arith.hpp"
#include "klm/kl.hpp"
#include "klm/poly.hpp"
#include "klm/series.hpp"
#include "klm/symfunc.hpp"

// Equivariant KL polynomials: the closed form for uniform matroids, and
// order-by-order solutions of the generating-function functional equations
// for the uniform, fan-with-spine (thagomizer), and complete-graph (braid)
// families. Every equivariant result is cross-checkable against the ordinary
// polynomial through its graded dimension.

namespace klm {

// A KL polynomial valued in symmetric-group representations: one Schur-basis
// symmetric function of degree n per t-degree. Graded dimension recovers the
// ordinary polynomial.
struct EquivariantKL {
    int n = 0;  // degree of the acting symmetric group
    int matroid_rank = 0;
    std::vector<SymFunc> coeffs;  // indexed by t-degree, Schur basis, t-free
};

// Solve t^r f(1/t) - f(t) = rhs for the unique f with deg f < r/2.
// Verifies the reconstruction, so a non-antisymmetric right-hand side
// (a kernel bug) cannot slip through.
inline TPoly tpoly_degree_split(int r, const TPoly& rhs) {
    if (r <= 0) throw std::domain_error("tpoly_degree_split: rank must be positive");
    TPoly f;
    for (const auto& [d, v] : rhs.terms())
        if (2 * d > r) f.add_to(r - d, v);
    if (!(f.bar().shifted(r) - f == rhs))
        throw std::domain_error("tpoly_degree_split: right-hand side is not antisymmetric");
    return f;
}

// The same split applied to every multiplicity of a symmetric function.
inline SymFunc symfunc_degree_split(int r, const SymFunc& rhs) {
    SymFunc out(rhs.degree(), rhs.basis());
    for (const auto& [la, c] : rhs.terms()) out.add_term(la, tpoly_degree_split(r, c));
    return out;
}

// Package a solved t-graded symmetric function as an EquivariantKL:
// Schur basis, integral multiplicities, Laurent-free, degree below rank/2.
inline EquivariantKL to_equivariant_kl(const SymFunc& f, int rank, int n) {
    SymFunc sch = basis_convert(f, SymBasis::schur);
    if (!integral_multiplicities(sch))
        throw std::logic_error("equivariant solve: non-integral Schur multiplicities");
    int dmax = 0;
    for (const auto& [la, c] : sch.terms())
        for (const auto& [d, v] : c.terms()) {
            if (d < 0) throw std::logic_error("equivariant solve: residual Laurent terms");
            dmax = std::max(dmax, d);
        }
    if (rank > 0 ? 2 * dmax >= rank : dmax != 0)
        throw std::logic_error("equivariant solve: coefficient degree exceeds the rank bound");
    EquivariantKL out{n, rank,
                      std::vector<SymFunc>(static_cast<size_t>(dmax) + 1, SymFunc(n, SymBasis::schur))};
    for (const auto& [la, c] : sch.terms())
        for (const auto& [d, v] : c.terms())
            out.coeffs[static_cast<size_t>(d)].add_term(la, TPoly::constant(v));
    return out;
}

inline IntPolynomial graded_dimension(const EquivariantKL& e) {
    IntPolynomial out;
    for (size_t i = 0; i < e.coeffs.size(); ++i) {
        TPoly d = dimension(e.coeffs[i]);
        if (d.is_zero()) continue;
        Rational v = d.coeff(0);  // coefficients are t-free, so dimension is constant
        if (!is_integer(v)) throw std::logic_error("graded_dimension: non-integral dimension");
        out.set_coeff(static_cast<int>(i), to_integer(v));
    }
    return out;
}

inline bool equivariant_positivity_check(const EquivariantKL& e) {
    for (const auto& c : e.coeffs)
        if (!is_schur_positive(c)) return false;
    return true;
}

inline StrongLogConcavityReport strong_log_concave_check(const EquivariantKL& e) {
    return strong_log_concave_check(e.coeffs);
}

// Closed form for the t^i coefficient of the equivariant KL polynomial of
// the rank-d uniform matroid on m+d elements: for i > 0 the direct sum over
// b = 1..min(m, d-2i) of the irreducibles with shape
// (d+m-2i-b+1, b+1, 2^{i-1}); for i = 0 the trivial representation.
inline SymFunc uniform_equivariant_closed(int m, int d, int i) {
    if (m < 0 || d < 1 || i < 0)
        throw std::invalid_argument("uniform_equivariant_closed: need m >= 0, d >= 1, i >= 0");
    SymFunc out(m + d, SymBasis::schur);
    if (i == 0) {
        out.add_term(Partition(std::vector<int>{m + d}), TPoly::constant(1));
        return out;
    }
    int bmax = std::min(m, d - 2 * i);
    for (int b = 1; b <= bmax; ++b) {
        std::vector<int> parts{d + m - 2 * i - b + 1, b + 1};
        parts.insert(parts.end(), static_cast<size_t>(i - 1), 2);
        out.add_term(Partition(std::move(parts)), TPoly::constant(1));
    }
    return out;
}

inline EquivariantKL uniform_equivariant_kl(int m, int d) {
    EquivariantKL out{m + d, d, {}};
    for (int i = 0; 2 * i < d; ++i) {
        SymFunc c = uniform_equivariant_closed(m, d, i);
        if (i > 0 && c.is_zero()) break;  // empty sums stay empty as i grows
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

namespace detail {

// sum_{n=0}^{order} s[n] u^n in the power basis; t_graded additionally
// weights the u^n coefficient by t^n, giving the series evaluated at tu
inline PowerSeries<SymFunc> complete_row_series(int order, bool t_graded) {
    PowerSeries<SymFunc> s(Var::u, order, SymFunc());
    for (int n = 0; n <= order; ++n) {
        Partition row(n == 0 ? std::vector<int>{} : std::vector<int>{n});
        SymFunc hn = basis_convert(SymFunc::schur(row), SymBasis::power);
        if (t_graded && n > 0) hn = TPoly::monomial(n) * hn;
        s.set(n, hn);
    }
    return s;
}

// 1 / (sum s[n] u^n) = sum (-1)^n s[1^n] u^n
inline PowerSeries<SymFunc> complete_row_inverse(int order) {
    PowerSeries<SymFunc> s(Var::u, order, SymFunc());
    for (int n = 0; n <= order; ++n) {
        Partition col(std::vector<int>(static_cast<size_t>(n), 1));
        SymFunc en = basis_convert(SymFunc::schur(col), SymBasis::power);
        if (n % 2) en = TPoly::constant(-1) * en;
        s.set(n, en);
    }
    return s;
}

inline TPoly t_power_minus_one(int b) {
    TPoly p = TPoly::monomial(b);
    p += TPoly::constant(-1);
    return p;
}

inline IntPolynomial to_int_poly_checked(const TPoly& p, const char* who) {
    if (!p.is_integer_polynomial())
        throw std::logic_error(std::string(who) + ": expected an integer polynomial, got " +
                               p.to_string());
    return p.to_int_polynomial();
}

inline void add_scaled(PowerSeries<TPoly>& acc, const TPoly& c, const PowerSeries<TPoly>& s) {
    for (int i = 0; i <= acc.order(); ++i) acc.add_to(i, c * s.coeff(i));
}

}  // namespace detail

// Substitute a degree-graded series g (power basis, [u^n] homogeneous of
// degree n) plethystically into f: p_k picks up the Adams twist on both the
// symmetric function and the t-multiplicities, and multiplies the u-power
// by k. Outer multiplicities of f are scalars.
inline PowerSeries<SymFunc> plethysm_series(const SymFunc& f, const PowerSeries<SymFunc>& g) {
    SymFunc fp = basis_convert(f, SymBasis::power);
    PowerSeries<SymFunc> res(g.var(), g.order(), g.zero());
    for (const auto& [la, c] : fp.terms()) {
        PowerSeries<SymFunc> term =
            series_constant(g.var(), g.order(), SymFunc::power(Partition{}), g.zero());
        for (int k : la.parts()) {
            PowerSeries<SymFunc> pk(g.var(), g.order(), g.zero());
            for (int a = 1; a * k <= g.order(); ++a) pk.set(a * k, power_stretch(g.coeff(a), k));
            term = term * pk;
        }
        for (int i = 0; i <= g.order(); ++i) res.add_to(i, c * term.coeff(i));
    }
    return res;
}

struct UniformFETable {
    bool equivariant = false;
    std::map<std::pair<int, int>, IntPolynomial> polynomials;  // (m,d) -> P
    std::map<std::pair<int, int>, EquivariantKL> characters;   // (m,d) -> ch P
};

// Order-by-order solution of the uniform-family functional equation
//   P(1/t, tu, x) = H(t,u,x) + (kernel ratio) P(t,u,x),
// symmetric-function version when equivariant, exponential version
// otherwise. Solves every (m,d) with m <= x_order, d <= u_order (and
// m+d <= total_cap in the equivariant case).
inline UniformFETable solve_uniform_fe(int x_order, int u_order, bool equivariant,
                                       int total_cap = sym_degree_cap) {
    if (x_order < 0 || u_order < 1)
        throw std::invalid_argument("solve_uniform_fe: need x_order >= 0 and u_order >= 1");
    UniformFETable table;
    table.equivariant = equivariant;
    if (equivariant) {
        if (total_cap > sym_degree_cap)
            throw resource_error("solve_uniform_fe: total degree cap above the symmetric cap");
        auto inv = detail::complete_row_inverse(u_order);
        auto sigma = detail::complete_row_series(u_order, true) * inv;  // s(tu)/s(u)
        for (int m = 0; m <= x_order; ++m) {
            int dmax = std::min(u_order, total_cap - m);
            if (dmax < 1) continue;
            PowerSeries<SymFunc> num(Var::u, dmax, SymFunc());
            for (int b = 1; b <= dmax; ++b) {
                Partition row(std::vector<int>{m + b});
                num.set(b, detail::t_power_minus_one(b) *
                               basis_convert(SymFunc::schur(row), SymBasis::power));
            }
            PowerSeries<SymFunc> hm = num * inv.truncated(dmax);
            std::vector<SymFunc> sol(static_cast<size_t>(dmax) + 1);
            for (int d = 1; d <= dmax; ++d) {
                SymFunc rhs = hm.coeff(d);
                for (int dp = 1; dp < d; ++dp)
                    rhs += multiply(sigma.coeff(d - dp), sol[static_cast<size_t>(dp)]);
                sol[static_cast<size_t>(d)] = symfunc_degree_split(d, rhs);
                table.characters.emplace(std::pair{m, d},
                                         to_equivariant_kl(sol[static_cast<size_t>(d)], d, m + d));
            }
        }
    } else {
        if (x_order > default_x_order || u_order > default_uz_order)
            throw resource_error("solve_uniform_fe: orders above the series caps");
        PowerSeries<TPoly> eps(Var::u, u_order, TPoly());
        eps.set(1, detail::t_power_minus_one(1));
        eps = series_exp(eps);  // e^{(t-1)u}
        PowerSeries<TPoly> em(Var::u, u_order, TPoly());
        em.set(1, TPoly::constant(-1));
        em = series_exp(em);  // e^{-u}
        for (int m = 0; m <= x_order; ++m) {
            PowerSeries<TPoly> num(Var::u, u_order, TPoly());
            for (int b = 1; b <= u_order; ++b)
                num.set(b, ratio(1, factorial(static_cast<unsigned long>(m + b))) *
                               detail::t_power_minus_one(b));
            PowerSeries<TPoly> hm = num * em;
            std::vector<TPoly> sol(static_cast<size_t>(u_order) + 1);
            for (int d = 1; d <= u_order; ++d) {
                TPoly rhs = hm.coeff(d);
                for (int dp = 1; dp < d; ++dp) rhs += eps.coeff(d - dp) * sol[static_cast<size_t>(dp)];
                sol[static_cast<size_t>(d)] = tpoly_degree_split(d, rhs);
                TPoly scaled = Rational(factorial(static_cast<unsigned long>(m + d))) *
                               sol[static_cast<size_t>(d)];
                table.polynomials.emplace(std::pair{m, d},
                                          detail::to_int_poly_checked(scaled, "solve_uniform_fe"));
            }
        }
    }
    return table;
}

struct FamilyFETable {
    bool equivariant = false;
    std::map<int, IntPolynomial> polynomials;  // n -> P
    std::map<int, EquivariantKL> characters;   // n -> ch P
};

// Fan-with-spine family: rank of the n-th member is n+1; the kernel pairs
// the squared ratio s(tu)^2/s(u)^2 with the plethysm column
// v(t,u) = sum_n s[n][(t-2)s[1]] u^n.
inline FamilyFETable solve_thagomizer_fe(int n_max, bool equivariant) {
    if (n_max < 0) throw std::invalid_argument("solve_thagomizer_fe: n_max must be >= 0");
    FamilyFETable table;
    table.equivariant = equivariant;
    if (equivariant) {
        if (n_max > sym_degree_cap)
            throw resource_error("solve_thagomizer_fe: n_max above the symmetric degree cap");
        auto inv = detail::complete_row_inverse(n_max);
        auto sigma = detail::complete_row_series(n_max, true) * inv;
        auto w = sigma * sigma;
        SymFunc arg(1, SymBasis::power);  // (t-2) p_1
        {
            TPoly tm2 = TPoly::monomial(1);
            tm2 += TPoly::constant(-2);
            arg.add_term(Partition(std::vector<int>{1}), tm2);
        }
        PowerSeries<SymFunc> v(Var::u, n_max, SymFunc());
        for (int n = 0; n <= n_max; ++n) {
            Partition row(n == 0 ? std::vector<int>{} : std::vector<int>{n});
            v.set(n, plethysm(basis_convert(SymFunc::schur(row), SymBasis::power), arg));
        }
        auto sv = detail::complete_row_series(n_max, false) * v;
        TPoly tm1 = detail::t_power_minus_one(1);
        std::vector<SymFunc> sol(static_cast<size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n) {
            SymFunc rhs = tm1 * sv.coeff(n);
            for (int np = 0; np < n; ++np)
                rhs += multiply(w.coeff(n - np), sol[static_cast<size_t>(np)]);
            sol[static_cast<size_t>(n)] = symfunc_degree_split(n + 1, rhs);
            table.characters.emplace(n, to_equivariant_kl(sol[static_cast<size_t>(n)], n + 1, n));
        }
    } else {
        if (n_max > default_uz_order - 1)
            throw resource_error("solve_thagomizer_fe: n_max above the series cap");
        PowerSeries<TPoly> a(Var::u, n_max, TPoly());
        a.set(1, detail::t_power_minus_one(1));
        auto e1 = series_exp(a);  // e^{(t-1)u}
        auto w = e1 * e1;         // e^{2(t-1)u}
        TPoly tm1 = detail::t_power_minus_one(1);
        std::vector<TPoly> sol(static_cast<size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n) {
            TPoly rhs = tm1 * e1.coeff(n);  // [u^{n+1}] of (tu-u)e^{tu-u}
            for (int np = 0; np < n; ++np) rhs += w.coeff(n - np) * sol[static_cast<size_t>(np)];
            sol[static_cast<size_t>(n)] = tpoly_degree_split(n + 1, rhs);
            TPoly scaled = Rational(factorial(static_cast<unsigned long>(n))) *
                           sol[static_cast<size_t>(n)];
            table.polynomials.emplace(n, detail::to_int_poly_checked(scaled, "solve_thagomizer_fe"));
        }
    }
    return table;
}

namespace detail {

// Plethystic kernel for the complete-graph family: the u-degree of every
// term equals its symmetric-function degree, i.e. p_k carries u^k. The
// exponents are the necklace polynomials (1/k) sum_{d|k} mu(k/d) t^d.
inline PowerSeries<SymFunc> braid_plethysm_kernel(int u_order) {
    PowerSeries<SymFunc> logp(Var::u, u_order, SymFunc());
    for (int k = 1; k <= u_order; ++k) {
        TPoly ck;
        for (int d = 1; d <= k; ++d)
            if (k % d == 0) {
                int mu = moebius(k / d);
                if (mu != 0) ck.add_to(d, ratio(mu, k));
            }
        for (int a = 1; a * k <= u_order; ++a) {
            SymFunc term(a * k, SymBasis::power);
            term.add_term(Partition(std::vector<int>(static_cast<size_t>(a), k)),
                          ratio(a % 2 ? 1 : -1, a) * ck);
            logp.add_to(a * k, term);
        }
    }
    auto prod = series_exp(logp);
    TPoly tinv = TPoly::monomial(-1);
    PowerSeries<SymFunc> kernel(Var::u, u_order, SymFunc());
    for (int i = 1; i <= u_order; ++i) kernel.set(i, tinv * prod.coeff(i));
    return kernel;
}

}  // namespace detail

// Complete-graph family: rank of the n-th member is n-1. Non-equivariant:
// compose the exponential generating function with the binomial kernel in z.
// Equivariant: substitute the plethystic kernel into the accumulated sum of
// solved characters; the seed is the n=1 character p_1.
inline FamilyFETable solve_braid_fe(int n_max, bool equivariant) {
    if (n_max < 1) throw std::invalid_argument("solve_braid_fe: n_max must be >= 1");
    FamilyFETable table;
    table.equivariant = equivariant;
    if (!equivariant) {
        if (n_max > 22) throw resource_error("solve_braid_fe: non-equivariant cap is n_max = 22");
        table.polynomials.emplace(1, IntPolynomial::constant(1));
        if (n_max == 1) return table;
        auto k = binomial_power_t(n_max);
        PowerSeries<TPoly> acc = k;  // q_1 K^1 with q_1 = 1
        PowerSeries<TPoly> kpow = k;
        for (int n = 2; n <= n_max; ++n) {
            TPoly q = tpoly_degree_split(n - 1, acc.coeff(n));
            TPoly scaled = Rational(factorial(static_cast<unsigned long>(n))) * q;
            table.polynomials.emplace(n, detail::to_int_poly_checked(scaled, "solve_braid_fe"));
            if (n < n_max) {
                kpow = kpow * k;
                detail::add_scaled(acc, q, kpow);
            }
        }
    } else {
        if (n_max > 8) throw resource_error("solve_braid_fe: equivariant cap is n_max = 8");
        SymFunc seed = SymFunc::power(Partition(std::vector<int>{1}));
        table.characters.emplace(1, to_equivariant_kl(seed, 0, 1));
        if (n_max == 1) return table;
        auto kernel = detail::braid_plethysm_kernel(n_max);
        PowerSeries<SymFunc> acc = plethysm_series(seed, kernel);
        for (int n = 2; n <= n_max; ++n) {
            SymFunc rhs = acc.coeff(n);
            if (!rhs.is_zero() && rhs.degree() != n)
                throw std::logic_error("solve_braid_fe: kernel grading violated");
            SymFunc f = symfunc_degree_split(n - 1, rhs);
            table.characters.emplace(n, to_equivariant_kl(f, n - 1, n));
            if (n < n_max) acc += plethysm_series(f, kernel);
        }
    }
    return table;
}

struct BraidLeadingReport {
    struct Row {
        int k = 0;
        Integer expected;
        Integer computed;
        bool match = false;
    };
    std::vector<Row> rows;
    bool all_match = true;
};

// Compare the top coefficient of the even-index complete-graph polynomials
// against the counting formula (2k-3)!! (2k-1)^(k-2).
inline BraidLeadingReport braid_leading_coeff_check(int k_max) {
    if (k_max < 2) throw std::invalid_argument("braid_leading_coeff_check: k_max must be >= 2");
    if (2 * k_max > 25)
        throw resource_error("braid_leading_coeff_check: 2k above the recursion range");
    BraidLeadingReport rep;
    for (int k = 2; k <= k_max; ++k) {
        Integer expected = double_factorial(2 * k - 3);
        Integer base(2 * k - 1), pw;
        mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k - 2));
        expected *= pw;
        IntPolynomial p = kl_braid_type(2 * k).polynomial;
        Integer computed = p.coeff(k - 1);  // the maximal degree allowed by the rank bound
        bool ok = computed == expected && p.degree() == k - 1;
        rep.rows.push_back({k, expected, computed, ok});
        rep.all_match = rep.all_match && ok;
    }
    return rep;
}

struct BraidGFReport {
    int index = 0;            // which t-coefficient
    int first_mismatch = -1;  // first differing z-order, -1 when all agree
    std::vector<Integer> computed;
    std::vector<Integer> expected;
    bool match() const { return first_mismatch < 0; }
};

namespace detail {

// Taylor series of (1 - a z)^{-r}
inline PowerSeries<Rational> binomial_pole(long a, int r, int order) {
    PowerSeries<Rational> s(Var::z, order, Rational(0));
    Integer apow = 1;
    for (int n = 0; n <= order; ++n) {
        s.set(n, Rational(binomial(n + r - 1, static_cast<long>(r - 1)) * apow));
        apow *= a;
    }
    return s;
}

}  // namespace detail

// Match the ordinary generating function of the i-th KL coefficients of the
// complete-graph family against its known rational closed form, term by term.
inline BraidGFReport braid_coefficient_gf_check(int i, int n_max) {
    if (i != 1 && i != 2)
        throw std::invalid_argument(
            "braid_coefficient_gf_check: closed forms are known for the first two coefficients");
    if (n_max < 14)
        throw std::invalid_argument("braid_coefficient_gf_check: n_max must be at least 14");
    if (n_max > 25)
        throw resource_error("braid_coefficient_gf_check: n_max above the recursion range");
    BraidGFReport rep;
    rep.index = i;
    for (int n = 0; n <= n_max; ++n)
        rep.computed.push_back(n >= 1 ? kl_braid_type(n).polynomial.coeff(i) : Integer(0));
    PowerSeries<Rational> num(Var::z, n_max, Rational(0));
    PowerSeries<Rational> poles(Var::z, n_max, Rational(0));
    if (i == 1) {
        num.set(4, Rational(1));
        poles = detail::binomial_pole(1, 3, n_max) * detail::binomial_pole(2, 1, n_max);
    } else {
        num.set(6, Rational(15));
        num.set(7, Rational(-50));
        num.set(8, Rational(40));
        num.set(9, Rational(4));
        poles = detail::binomial_pole(1, 5, n_max) * detail::binomial_pole(2, 3, n_max) *
                detail::binomial_pole(4, 1, n_max);
    }
    PowerSeries<Rational> series = num * poles;
    for (int n = 0; n <= n_max; ++n) {
        Rational v = series.coeff(n);
        if (!is_integer(v))
            throw std::logic_error("braid_coefficient_gf_check: non-integral expected value");
        rep.expected.push_back(to_integer(v));
        if (rep.first_mismatch < 0 && rep.expected.back() != rep.computed[static_cast<size_t>(n)])
            rep.first_mismatch = n;
    }
    return rep;
}

}  // namespace klm
