#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klm/arith.hpp"

namespace klm {

// Dense univariate polynomial over Z. Trailing zeros are trimmed, so the
// zero polynomial has an empty coefficient vector and degree() == -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(Integer v) {
        return IntPolynomial(std::vector<Integer>{std::move(v)});
    }
    static IntPolynomial monomial(int deg, Integer coeff = 1) {
        std::vector<Integer> c(deg + 1);
        c[deg] = std::move(coeff);
        return IntPolynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Integer& coeff(int i) const {
        static const Integer zero{};
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[i];
    }
    const std::vector<Integer>& coefficients() const { return c_; }

    void set_coeff(int i, Integer v) {
        if (i < 0) throw std::out_of_range("set_coeff: negative index");
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1);
        c_[i] = std::move(v);
        trim();
    }

    IntPolynomial& operator+=(const IntPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    IntPolynomial& operator-=(const IntPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator-(const IntPolynomial& a) {
        std::vector<Integer> c(a.c_.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = -a.c_[i];
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(c));
    }
    IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

    friend IntPolynomial operator*(const Integer& s, IntPolynomial p) {
        for (auto& v : p.c_) v *= s;
        p.trim();
        return p;
    }

    Integer eval(const Integer& x) const {
        Integer acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Integer> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Integer(static_cast<long>(i)) * c_[i];
        return IntPolynomial(std::move(d));
    }

    // t^r * p(1/t); requires r >= degree so the result stays polynomial.
    IntPolynomial reversed(int r) const {
        if (degree() > r) throw std::domain_error("reversed: r smaller than degree");
        std::vector<Integer> c(r + 1);
        for (size_t i = 0; i < c_.size(); ++i) c[r - i] = c_[i];
        return IntPolynomial(std::move(c));
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i <= degree(); ++i) {
            const Integer& v = c_[i];
            if (v == 0) continue;
            Integer a = abs(v);
            if (first) {
                if (v < 0) os << "-";
                first = false;
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            if (a != 1 || i == 0) os << a.get_str();
            if (i > 0) {
                if (a != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

// Dense univariate polynomial over Q; used by the root-counting machinery,
// which needs exact division with remainder.
class RatPolynomial {
public:
    RatPolynomial() = default;
    explicit RatPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit RatPolynomial(const IntPolynomial& p) {
        c_.reserve(p.degree() + 1);
        for (int i = 0; i <= p.degree(); ++i) c_.emplace_back(p.coeff(i));
        trim();
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(int i) const {
        static const Rational zero{};
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[i];
    }
    const Rational& leading() const {
        if (is_zero()) throw std::domain_error("leading: zero polynomial");
        return c_.back();
    }

    RatPolynomial& operator+=(const RatPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    RatPolynomial& operator-=(const RatPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend RatPolynomial operator+(RatPolynomial a, const RatPolynomial& b) { return a += b; }
    friend RatPolynomial operator-(RatPolynomial a, const RatPolynomial& b) { return a -= b; }

    friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return RatPolynomial(std::move(c));
    }
    friend RatPolynomial operator*(const Rational& s, RatPolynomial p) {
        for (auto& v : p.c_) v *= s;
        p.trim();
        return p;
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RatPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
        return RatPolynomial(std::move(d));
    }

    // Euclidean division: *this == q * d + r with deg r < deg d.
    std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& d) const {
        if (d.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
        RatPolynomial r = *this;
        std::vector<Rational> q;
        if (r.degree() >= d.degree()) q.resize(r.degree() - d.degree() + 1);
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rational f = r.leading() / d.leading();
            q[k] = f;
            for (int i = 0; i <= d.degree(); ++i) r.c_[k + i] -= f * d.c_[i];
            r.trim();
        }
        return {RatPolynomial(std::move(q)), std::move(r)};
    }

    // Scale to integer coefficients with content 1 and positive leading
    // coefficient; root set is unchanged.
    RatPolynomial primitive() const {
        if (is_zero()) return {};
        Integer den = 1;
        for (const auto& v : c_) den = lcm(den, v.get_den());
        Integer g = 0;
        for (const auto& v : c_) g = gcd(g, Integer(v.get_num() * (den / v.get_den())));
        Rational s = ratio(den, g);
        if (leading() < 0) s = -s;
        return s * *this;
    }

    friend bool operator==(const RatPolynomial& a, const RatPolynomial& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Sparse Laurent polynomial over Q in one variable t. Exponents may be
// negative; entries with zero coefficient are never stored.
class TPoly {
public:
    TPoly() = default;
    explicit TPoly(const IntPolynomial& p) {
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeff(i) != 0) c_[i] = Rational(p.coeff(i));
    }
    static TPoly constant(Rational v) {
        TPoly p;
        p.set(0, std::move(v));
        return p;
    }
    static TPoly monomial(int deg, Rational coeff = 1) {
        TPoly p;
        p.set(deg, std::move(coeff));
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    Rational coeff(int d) const {
        auto it = c_.find(d);
        return it == c_.end() ? Rational(0) : it->second;
    }
    void set(int d, Rational v) {
        if (v == 0)
            c_.erase(d);
        else
            c_[d] = std::move(v);
    }
    void add_to(int d, const Rational& v) {
        auto it = c_.emplace(d, 0).first;
        it->second += v;
        if (it->second == 0) c_.erase(it);
    }

    int min_degree() const {
        if (c_.empty()) throw std::domain_error("min_degree: zero polynomial");
        return c_.begin()->first;
    }
    int max_degree() const {
        if (c_.empty()) throw std::domain_error("max_degree: zero polynomial");
        return c_.rbegin()->first;
    }

    const std::map<int, Rational>& terms() const { return c_; }

    TPoly& operator+=(const TPoly& o) {
        for (const auto& [d, v] : o.c_) add_to(d, v);
        return *this;
    }
    TPoly& operator-=(const TPoly& o) {
        for (const auto& [d, v] : o.c_) add_to(d, -v);
        return *this;
    }
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator-(const TPoly& a) {
        TPoly r;
        for (const auto& [d, v] : a.c_) r.c_[d] = -v;
        return r;
    }

    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r;
        for (const auto& [da, va] : a.c_)
            for (const auto& [db, vb] : b.c_) r.add_to(da + db, va * vb);
        return r;
    }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }
    friend TPoly operator*(const Rational& s, const TPoly& p) {
        TPoly r;
        if (s == 0) return r;
        for (const auto& [d, v] : p.c_) r.c_[d] = s * v;
        return r;
    }

    // t -> 1/t.
    TPoly bar() const {
        TPoly r;
        for (const auto& [d, v] : c_) r.c_[-d] = v;
        return r;
    }
    // multiply by t^k.
    TPoly shifted(int k) const {
        TPoly r;
        for (const auto& [d, v] : c_) r.c_[d + k] = v;
        return r;
    }
    // t -> t^k, k >= 1.
    TPoly subst_power(int k) const {
        if (k < 1) throw std::domain_error("subst_power: k must be >= 1");
        TPoly r;
        for (const auto& [d, v] : c_) r.c_[d * k] = v;
        return r;
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (const auto& [d, v] : c_) {
            if (d < 0) {
                if (x == 0) throw std::domain_error("eval: pole at 0");
                Rational xi = 1;
                for (int i = 0; i < -d; ++i) xi *= x;
                acc += v / xi;
            } else {
                Rational xi = 1;
                for (int i = 0; i < d; ++i) xi *= x;
                acc += v * xi;
            }
        }
        return acc;
    }

    bool is_integer_polynomial() const {
        for (const auto& [d, v] : c_)
            if (d < 0 || !is_integer(v)) return false;
        return true;
    }
    IntPolynomial to_int_polynomial() const {
        IntPolynomial p;
        for (const auto& [d, v] : c_) {
            if (d < 0) throw std::domain_error("to_int_polynomial: negative exponent");
            p.set_coeff(d, to_integer(v));
        }
        return p;
    }

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, v] : c_) {
            if (first) {
                if (v < 0) os << "-";
                first = false;
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            Rational a = abs(v);
            if (a != 1 || d == 0) os << a.get_str();
            if (d != 0) {
                if (a != 1) os << "*";
                os << var;
                if (d != 1) os << "^" << d;
            }
        }
        return os.str();
    }

private:
    std::map<int, Rational> c_;
};

// Generalized binomial coefficient C(e, j) = e(e-1)...(e-j+1)/j! where e is
// itself a polynomial in t.
inline TPoly tpoly_binomial(const TPoly& e, long j) {
    if (j < 0) return {};
    TPoly acc = TPoly::constant(1);
    for (long i = 0; i < j; ++i) acc *= e - TPoly::constant(Rational(i));
    return ratio(Integer(1), factorial(static_cast<unsigned long>(j))) * acc;
}

}  // namespace klm
