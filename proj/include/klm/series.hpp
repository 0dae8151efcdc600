#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klm/arith.hpp"
#include "klm/poly.hpp"

// Truncated formal power series in one bookkeeping variable (u, x, or z)
// with exact coefficients: Laurent polynomials in t, rationals, nested
// series, or symmetric functions. The truncation order is fixed per value
// and arithmetic never reads past it, so stored coefficients are exact.
// Two-variable series are nested, outer x and inner u.

namespace klm {

enum class Var { u, x, z };

inline const char* to_string(Var v) {
    switch (v) {
        case Var::u: return "u";
        case Var::x: return "x";
        case Var::z: return "z";
    }
    return "?";
}

// Orders that keep every functional-equation solve in this project exact.
inline constexpr int default_uz_order = 21;
inline constexpr int default_x_order = 12;

// Customization points for coefficient rings: rational scaling, the ring
// unit, and a zero test. Nested series overloads live after PowerSeries.
inline void scale_coeff(Rational& c, const Rational& s) { c *= s; }
inline void scale_coeff(TPoly& c, const Rational& s) { c = s * c; }
inline Rational coeff_one(const Rational&) { return Rational(1); }
inline TPoly coeff_one(const TPoly&) { return TPoly::constant(1); }
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const TPoly& c) { return c.is_zero(); }

template <class C>
class PowerSeries {
public:
    // The zero prototype carries shape for structured coefficient rings
    // (e.g. the inner series of a nested two-variable value).
    PowerSeries(Var v, int order, C zero = C())
        : var_(v), zero_(std::move(zero)), c_(static_cast<size_t>(order) + 1, zero_) {
        if (order < 0) throw std::invalid_argument("PowerSeries: order must be >= 0");
    }

    Var var() const { return var_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const C& zero() const { return zero_; }

    const C& coeff(int n) const {
        if (n < 0 || n > order()) return zero_;
        return c_[static_cast<size_t>(n)];
    }
    // writes beyond the order are discarded: values live in R[[v]]/(v^{order+1})
    void set(int n, C v) {
        if (n < 0) throw std::out_of_range("PowerSeries::set: negative degree");
        if (n <= order()) c_[static_cast<size_t>(n)] = std::move(v);
    }
    void add_to(int n, const C& v) {
        if (n < 0) throw std::out_of_range("PowerSeries::add_to: negative degree");
        if (n <= order()) c_[static_cast<size_t>(n)] += v;
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!coeff_is_zero(v)) return false;
        return true;
    }

    PowerSeries truncated(int new_order) const {
        PowerSeries r(var_, std::min(new_order, order()), zero_);
        for (int n = 0; n <= r.order(); ++n) r.c_[static_cast<size_t>(n)] = c_[static_cast<size_t>(n)];
        return r;
    }

    PowerSeries& operator+=(const PowerSeries& o) {
        require_compatible(o);
        if (o.order() < order()) *this = truncated(o.order());
        for (int n = 0; n <= order(); ++n) c_[static_cast<size_t>(n)] += o.c_[static_cast<size_t>(n)];
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& o) {
        require_compatible(o);
        if (o.order() < order()) *this = truncated(o.order());
        for (int n = 0; n <= order(); ++n) c_[static_cast<size_t>(n)] -= o.c_[static_cast<size_t>(n)];
        return *this;
    }
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator-(const PowerSeries& a) {
        PowerSeries r(a.var_, a.order(), a.zero_);
        for (int n = 0; n <= a.order(); ++n) r.c_[static_cast<size_t>(n)] = a.zero_ - a.c_[static_cast<size_t>(n)];
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        a.require_compatible(b);
        PowerSeries r(a.var_, std::min(a.order(), b.order()), a.zero_);
        for (int i = 0; i <= r.order(); ++i) {
            if (coeff_is_zero(a.c_[static_cast<size_t>(i)])) continue;
            for (int j = 0; i + j <= r.order(); ++j)
                r.c_[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
        }
        return r;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.var_ == b.var_ && a.c_ == b.c_;
    }

private:
    void require_compatible(const PowerSeries& o) const {
        if (var_ != o.var_)
            throw std::invalid_argument("PowerSeries: mixed variables in arithmetic");
    }
    Var var_;
    C zero_;
    std::vector<C> c_;
};

template <class C>
inline void scale_coeff(PowerSeries<C>& s, const Rational& r) {
    PowerSeries<C> out(s.var(), s.order(), s.zero());
    for (int n = 0; n <= s.order(); ++n) {
        C v = s.coeff(n);
        scale_coeff(v, r);
        out.set(n, std::move(v));
    }
    s = std::move(out);
}
template <class C>
inline PowerSeries<C> coeff_one(const PowerSeries<C>& like) {
    PowerSeries<C> r(like.var(), like.order(), like.zero());
    r.set(0, coeff_one(like.zero()));
    return r;
}
template <class C>
inline bool coeff_is_zero(const PowerSeries<C>& s) {
    return s.is_zero();
}

template <class C>
inline PowerSeries<C> series_constant(Var v, int order, C value, C zero = C()) {
    PowerSeries<C> r(v, order, std::move(zero));
    r.set(0, std::move(value));
    return r;
}

// the series "v" itself
template <class C>
inline PowerSeries<C> series_variable(Var v, int order, C zero = C()) {
    PowerSeries<C> r(v, order, zero);
    r.set(1, coeff_one(zero));
    return r;
}

template <class C>
inline PowerSeries<C> series_scaled(PowerSeries<C> s, const Rational& r) {
    scale_coeff(s, r);
    return s;
}

// exp(a) = sum a^k / k!; needs a zero constant term so each power raises
// the valuation and the sum is finite at any truncation order.
template <class C>
inline PowerSeries<C> series_exp(const PowerSeries<C>& a) {
    if (!coeff_is_zero(a.coeff(0)))
        throw std::domain_error("series_exp: nonzero constant term");
    PowerSeries<C> res = coeff_one(a);
    PowerSeries<C> term = coeff_one(a);
    for (int k = 1; k <= a.order(); ++k) {
        term = term * a;
        scale_coeff(term, ratio(1, k));
        res += term;
    }
    return res;
}

// log(1 + w) = sum (-1)^{k+1} w^k / k for a with constant term 1.
template <class C>
inline PowerSeries<C> series_log(const PowerSeries<C>& a) {
    C head = a.coeff(0);
    head -= coeff_one(a.zero());
    if (!coeff_is_zero(head))
        throw std::domain_error("series_log: constant term must be 1");
    PowerSeries<C> w = a;
    w.add_to(0, a.zero() - coeff_one(a.zero()));
    PowerSeries<C> res(a.var(), a.order(), a.zero());
    PowerSeries<C> pw = coeff_one(a);
    for (int k = 1; k <= a.order(); ++k) {
        pw = pw * w;
        PowerSeries<C> term = pw;
        scale_coeff(term, Rational(k % 2 == 1 ? 1 : -1) / k);
        res += term;
    }
    return res;
}

// f(g) by Horner; g must have zero constant term. The result lives in g's
// variable at order min(ord f, ord g).
template <class C>
inline PowerSeries<C> compose(const PowerSeries<C>& f, const PowerSeries<C>& g) {
    if (!coeff_is_zero(g.coeff(0)))
        throw std::domain_error("compose: inner series has nonzero constant term");
    int n = std::min(f.order(), g.order());
    PowerSeries<C> gn = g.truncated(n);
    PowerSeries<C> res(g.var(), n, g.zero());
    for (int k = n; k >= 0; --k) {
        res = res * gn;
        res.add_to(0, f.coeff(k));
    }
    return res;
}

// K(t,z) = t^{-1}(-1 + (1+z)^t): the z^n coefficient is
// (t-1)(t-2)...(t-n+1)/n! for n >= 1, Laurent-free by construction.
inline PowerSeries<TPoly> binomial_power_t(int z_order) {
    if (z_order < 1) throw std::invalid_argument("binomial_power_t: order must be >= 1");
    PowerSeries<TPoly> k(Var::z, z_order);
    TPoly tm1 = TPoly::monomial(1) - TPoly::constant(1);
    for (int n = 1; n <= z_order; ++n)
        k.set(n, ratio(1, n) * tpoly_binomial(tm1, n - 1));
    return k;
}

// t -> 1/t combined with v -> tv: the coefficient f(t) of v^n becomes
// t^n f(1/t). Inputs obeying the KL degree bound (t-degree of the v^n
// coefficient at most n) come back Laurent-free; anything else throws.
inline PowerSeries<TPoly> bar_substitute(const PowerSeries<TPoly>& s) {
    PowerSeries<TPoly> r(s.var(), s.order());
    for (int n = 0; n <= s.order(); ++n) {
        const TPoly& f = s.coeff(n);
        if (f.is_zero()) continue;
        TPoly g = f.bar().shifted(n);
        if (g.min_degree() < 0)
            throw std::domain_error("bar_substitute: negative t-powers remain at " +
                                    std::string(to_string(s.var())) + "^" + std::to_string(n));
        r.set(n, std::move(g));
    }
    return r;
}

// two-variable form: bar acts on the inner u-series of every x coefficient
inline PowerSeries<PowerSeries<TPoly>> bar_substitute(const PowerSeries<PowerSeries<TPoly>>& s) {
    PowerSeries<PowerSeries<TPoly>> r(s.var(), s.order(), s.zero());
    for (int n = 0; n <= s.order(); ++n) r.set(n, bar_substitute(s.coeff(n)));
    return r;
}

}  // namespace klm
