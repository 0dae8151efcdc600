#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klm/arith.hpp"
#include "klm/poly.hpp"

// Symmetric functions of one fixed degree with Laurent-polynomial (in t)
// multiplicities, over the Schur and power-sum bases. Power-sum is the
// working basis: the ordinary, Kronecker, and plethystic products are all
// cheap there, and integrality of Schur expansions then acts as a built-in
// correctness check on every conversion back.

namespace klm {

// Conversions walk the full character table of S_n; past this degree the
// table is no longer desk-scale.
inline constexpr int sym_degree_cap = 14;

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }

    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }
    int length() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return i >= 0 && i < length() ? parts_[static_cast<size_t>(i)] : 0; }
    const std::vector<int>& parts() const { return parts_; }

    Partition conjugate() const {
        if (parts_.empty()) return {};
        std::vector<int> c(static_cast<size_t>(parts_[0]));
        for (int j = 0; j < parts_[0]; ++j) {
            int cnt = 0;
            for (int p : parts_)
                if (p > j) ++cnt;
            c[static_cast<size_t>(j)] = cnt;
        }
        return Partition(std::move(c));
    }

    friend bool operator==(const Partition& a, const Partition& b) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) = default;

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

private:
    std::vector<int> parts_;
};

inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative weight");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// order of the centralizer of a permutation of cycle type lambda
inline Integer z_lambda(const Partition& la) {
    Integer z = 1;
    int run = 0, prev = 0;
    for (int p : la.parts()) {
        run = p == prev ? run + 1 : 1;
        prev = p;
        z *= Integer(p) * run;  // accumulates k^{m_k} m_k! across the run
    }
    return z;
}

// dimension of the irreducible S_n module of shape lambda (hook lengths)
inline Integer hook_dimension(const Partition& la) {
    int n = la.weight();
    if (n == 0) return 1;
    Partition conj = la.conjugate();
    Integer hooks = 1;
    for (int i = 0; i < la.length(); ++i)
        for (int j = 0; j < la.part(i); ++j)
            hooks *= (la.part(i) - j) + (conj.part(j) - i) - 1;
    return factorial(static_cast<unsigned long>(n)) / hooks;
}

namespace detail {

// Murnaghan-Nakayama on beta-sets: removing a border strip of size r moves
// a bead down by r; the sign is the parity of the beads jumped over.
inline Integer mn_rec(const std::vector<int>& la, const std::vector<int>& mu, size_t mi) {
    if (la.empty()) return 1;
    thread_local std::map<std::pair<std::vector<int>, std::vector<int>>, Integer> memo;
    std::pair<std::vector<int>, std::vector<int>> key{la, {mu.begin() + static_cast<long>(mi), mu.end()}};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int r = mu[mi];
    int len = static_cast<int>(la.size());
    std::vector<int> beta(la.begin(), la.end());
    for (int i = 0; i < len; ++i) beta[static_cast<size_t>(i)] += len - 1 - i;

    Integer total = 0;
    for (int i = 0; i < len; ++i) {
        int target = beta[static_cast<size_t>(i)] - r;
        if (target < 0) continue;
        bool occupied = false;
        int height = 0;
        for (int j = 0; j < len; ++j) {
            if (j == i) continue;
            int bj = beta[static_cast<size_t>(j)];
            if (bj == target) {
                occupied = true;
                break;
            }
            if (bj > target && bj < beta[static_cast<size_t>(i)]) ++height;
        }
        if (occupied) continue;
        std::vector<int> nb = beta;
        nb[static_cast<size_t>(i)] = target;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        std::vector<int> nla;
        for (int k = 0; k < len; ++k) {
            int part = nb[static_cast<size_t>(k)] - (len - 1 - k);
            if (part > 0) nla.push_back(part);
        }
        Integer sub = mn_rec(nla, mu, mi + 1);
        total += (height & 1) ? -sub : sub;
    }
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace detail

// character of the irreducible S_n module of shape lambda at cycle type mu
inline Integer mn_character(const Partition& la, const Partition& mu) {
    if (la.weight() != mu.weight())
        throw std::invalid_argument("mn_character: shape and cycle type have different weights");
    return detail::mn_rec(la.parts(), mu.parts(), 0);
}

enum class SymBasis { schur, power };

class SymFunc {
public:
    SymFunc() = default;
    SymFunc(int degree, SymBasis basis) : degree_(degree), basis_(basis) {
        if (degree < 0) throw std::invalid_argument("SymFunc: negative degree");
    }
    static SymFunc schur(const Partition& la) {
        SymFunc f(la.weight(), SymBasis::schur);
        f.terms_[la] = TPoly::constant(1);
        return f;
    }
    static SymFunc power(const Partition& la) {
        SymFunc f(la.weight(), SymBasis::power);
        f.terms_[la] = TPoly::constant(1);
        return f;
    }
    static SymFunc one() { return schur(Partition{}); }

    int degree() const { return degree_; }
    SymBasis basis() const { return basis_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Partition, TPoly>& terms() const { return terms_; }
    TPoly coeff(const Partition& la) const {
        auto it = terms_.find(la);
        return it == terms_.end() ? TPoly() : it->second;
    }

    void add_term(const Partition& la, const TPoly& c) {
        if (la.weight() != degree_)
            throw std::invalid_argument("SymFunc::add_term: weight does not match degree");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(la, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // zero absorbs any degree and basis, so truncated series of symmetric
    // functions can start from blank coefficients
    SymFunc& operator+=(const SymFunc& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        require_same(o);
        for (const auto& [la, c] : o.terms_) add_term(la, c);
        return *this;
    }
    SymFunc& operator-=(const SymFunc& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) *this = SymFunc(o.degree_, o.basis_);
        require_same(o);
        for (const auto& [la, c] : o.terms_) add_term(la, -c);
        return *this;
    }
    friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
    friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
    friend SymFunc operator-(const SymFunc& a) {
        SymFunc r(a.degree_, a.basis_);
        for (const auto& [la, c] : a.terms_) r.terms_[la] = -c;
        return r;
    }
    friend SymFunc operator*(const TPoly& s, SymFunc f) {
        if (s.is_zero()) return SymFunc(f.degree_, f.basis_);
        for (auto& [la, c] : f.terms_) c = s * c;
        return f;
    }
    friend SymFunc operator*(const Rational& s, SymFunc f) { return TPoly::constant(s) * std::move(f); }

    // two zeros agree regardless of recorded degree or basis
    friend bool operator==(const SymFunc& a, const SymFunc& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.degree_ == b.degree_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        const char* tag = basis_ == SymBasis::schur ? "s" : "p";
        for (const auto& [la, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.to_string() + ")*" + tag + la.to_string();
        }
        return s;
    }

private:
    void require_same(const SymFunc& o) const {
        if (degree_ != o.degree_)
            throw std::invalid_argument("SymFunc: mixed degrees in addition");
        if (basis_ != o.basis_)
            throw std::invalid_argument("SymFunc: mixed bases in addition");
    }
    int degree_ = 0;
    SymBasis basis_ = SymBasis::schur;
    std::map<Partition, TPoly> terms_;
};

inline bool integral_multiplicities(const SymFunc& f) {
    for (const auto& [la, c] : f.terms())
        for (const auto& [d, v] : c.terms())
            if (!is_integer(v)) return false;
    return true;
}

inline SymFunc basis_convert(const SymFunc& f, SymBasis target) {
    if (f.degree() > sym_degree_cap)
        throw resource_error("basis_convert: degree " + std::to_string(f.degree()) +
                             " over the cap " + std::to_string(sym_degree_cap));
    if (f.is_zero()) return SymFunc(f.degree(), target);
    if (f.basis() == target) return f;
    SymFunc r(f.degree(), target);
    auto classes = partitions_of(f.degree());
    if (target == SymBasis::power) {
        // s_la = sum_mu chi^la(mu) / z_mu * p_mu
        for (const auto& [la, m] : f.terms())
            for (const auto& mu : classes) {
                Integer chi = mn_character(la, mu);
                if (chi != 0) r.add_term(mu, ratio(chi, z_lambda(mu)) * m);
            }
    } else {
        // p_mu = sum_la chi^la(mu) * s_la
        for (const auto& [mu, a] : f.terms())
            for (const auto& la : classes) {
                Integer chi = mn_character(la, mu);
                if (chi != 0) r.add_term(la, Rational(chi) * a);
            }
    }
    return r;
}

namespace detail {

inline Partition merge_parts(const Partition& a, const Partition& b) {
    std::vector<int> m;
    m.reserve(a.parts().size() + b.parts().size());
    m.insert(m.end(), a.parts().begin(), a.parts().end());
    m.insert(m.end(), b.parts().begin(), b.parts().end());
    std::sort(m.begin(), m.end(), std::greater<int>());
    return Partition(std::move(m));
}

// integral inputs through an exact rational detour must come back integral
inline void check_integral_output(const SymFunc& out, bool inputs_integral, const char* op) {
    if (inputs_integral && !integral_multiplicities(out))
        throw std::logic_error(std::string(op) + ": non-integral Schur expansion from integral inputs");
}

}  // namespace detail

// degree-additive product (the induction product on representations)
inline SymFunc multiply(const SymFunc& f, const SymFunc& g) {
    int dn = f.degree() + g.degree();
    if (dn > sym_degree_cap)
        throw resource_error("multiply: degree " + std::to_string(dn) + " over the cap");
    bool schur_io = f.basis() == SymBasis::schur && g.basis() == SymBasis::schur;
    if (f.is_zero() || g.is_zero()) return SymFunc(dn, schur_io ? SymBasis::schur : SymBasis::power);
    SymFunc a = basis_convert(f, SymBasis::power);
    SymFunc b = basis_convert(g, SymBasis::power);
    SymFunc r(dn, SymBasis::power);
    for (const auto& [la, ca] : a.terms())
        for (const auto& [mu, cb] : b.terms()) r.add_term(detail::merge_parts(la, mu), ca * cb);
    if (schur_io) {
        r = basis_convert(r, SymBasis::schur);
        detail::check_integral_output(r, integral_multiplicities(f) && integral_multiplicities(g),
                                      "multiply");
    }
    return r;
}

inline SymFunc operator*(const SymFunc& f, const SymFunc& g) { return multiply(f, g); }

// internal (Kronecker) product: diagonal in the power basis with
// p_la * p_mu = delta_{la,mu} z_la p_la
inline SymFunc kronecker(const SymFunc& f, const SymFunc& g) {
    bool schur_io = f.basis() == SymBasis::schur && g.basis() == SymBasis::schur;
    if (f.is_zero() || g.is_zero())
        return SymFunc(f.is_zero() ? g.degree() : f.degree(),
                       schur_io ? SymBasis::schur : SymBasis::power);
    if (f.degree() != g.degree())
        throw std::invalid_argument("kronecker: degrees differ");
    SymFunc a = basis_convert(f, SymBasis::power);
    SymFunc b = basis_convert(g, SymBasis::power);
    SymFunc r(f.degree(), SymBasis::power);
    for (const auto& [la, ca] : a.terms()) {
        TPoly cb = b.coeff(la);
        if (!cb.is_zero()) r.add_term(la, Rational(z_lambda(la)) * (ca * cb));
    }
    if (schur_io) {
        r = basis_convert(r, SymBasis::schur);
        detail::check_integral_output(r, integral_multiplicities(f) && integral_multiplicities(g),
                                      "kronecker");
    }
    return r;
}

// Adams operation: p_mu -> p_{k mu} with multiplicities c(t) -> c(t^k);
// this is exactly p_k[f] under the grading convention below
inline SymFunc power_stretch(const SymFunc& f, int k) {
    if (k < 1) throw std::invalid_argument("power_stretch: k must be positive");
    if (!f.is_zero() && f.basis() != SymBasis::power)
        throw std::invalid_argument("power_stretch: power basis required");
    SymFunc r(f.degree() * k, SymBasis::power);
    for (const auto& [la, c] : f.terms()) {
        std::vector<int> scaled;
        scaled.reserve(la.parts().size());
        for (int p : la.parts()) scaled.push_back(p * k);
        r.add_term(Partition(std::move(scaled)), c.subst_power(k));
    }
    return r;
}

// plethysm f[g] under the t-graded convention: p_k[c(t) p_mu] =
// c(t^k) p_{k mu}, extended multiplicatively and additively; the outer
// multiplicities of f are plain scalars. In particular
// p_k[(t-2)s[1]] = (t^k - 2) p_k.
inline SymFunc plethysm(const SymFunc& f, const SymFunc& g) {
    int dn = f.degree() * g.degree();
    if (dn > sym_degree_cap)
        throw resource_error("plethysm: degree " + std::to_string(dn) + " over the cap");
    SymFunc fp = basis_convert(f, SymBasis::power);
    SymFunc gp = basis_convert(g, SymBasis::power);
    SymFunc res(dn, SymBasis::power);
    for (const auto& [la, coef] : fp.terms()) {
        SymFunc term = SymFunc::power(Partition{});
        for (int k : la.parts()) term = multiply(term, power_stretch(gp, k));
        res += coef * term;
    }
    if (f.basis() == SymBasis::schur) {
        res = basis_convert(res, SymBasis::schur);
        detail::check_integral_output(res, integral_multiplicities(f) && integral_multiplicities(g),
                                      "plethysm");
    }
    return res;
}

// graded dimension: multiplicities weighted by hook-length dimensions
inline TPoly dimension(const SymFunc& f) {
    if (!f.is_zero() && f.basis() != SymBasis::schur)
        throw std::invalid_argument("dimension: Schur basis required");
    TPoly d;
    for (const auto& [la, m] : f.terms()) d += Rational(hook_dimension(la)) * m;
    return d;
}

inline bool is_schur_positive(const SymFunc& f) {
    if (!f.is_zero() && f.basis() != SymBasis::schur)
        throw std::invalid_argument("is_schur_positive: Schur basis required");
    for (const auto& [la, m] : f.terms())
        for (const auto& [d, v] : m.terms())
            if (v < 0) return false;
    return true;
}

struct StrongLogConcavityReport {
    // quadruples (i, j, k, l) with i <= j <= k <= l, i+l = j+k, where
    // C_j (x) C_k - C_i (x) C_l failed Schur positivity
    std::vector<std::array<int, 4>> failures;
    bool pass() const { return failures.empty(); }
};

inline StrongLogConcavityReport strong_log_concave_check(const std::vector<SymFunc>& seq) {
    int deg = -1;
    for (const auto& f : seq) {
        if (f.is_zero()) continue;
        if (deg == -1)
            deg = f.degree();
        else if (f.degree() != deg)
            throw std::invalid_argument("strong_log_concave_check: mixed degrees");
    }
    StrongLogConcavityReport rep;
    int m = static_cast<int>(seq.size());
    for (int i = 0; i < m; ++i)
        for (int l = i; l < m; ++l)
            for (int j = i; j <= l; ++j) {
                int k = i + l - j;
                if (k < j || k > l) continue;
                if (i == j) continue;  // difference vanishes identically
                SymFunc d = kronecker(seq[j], seq[k]);
                d -= kronecker(seq[i], seq[l]);
                if (!is_schur_positive(d)) rep.failures.push_back({i, j, k, l});
            }
    return rep;
}

// hooks for truncated series with symmetric-function coefficients
inline void scale_coeff(SymFunc& f, const Rational& s) {
    f = s * std::move(f);
}
inline SymFunc coeff_one(const SymFunc&) { return SymFunc::one(); }
inline bool coeff_is_zero(const SymFunc& f) { return f.is_zero(); }

}  // namespace klm
