#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace klm {

// Raised when a configured budget (ground-set width, flat count, degree
// cap, subset enumeration) would be exceeded; distinct from contract
// violations.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class(n, d) does not reduce the fraction on construction; every
// rational built from parts must go through here.
inline Rational ratio(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("ratio: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational ratio(long num, long den) { return ratio(Integer(num), Integer(den)); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer to_integer(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("to_integer: " + q.get_str() + " is not integral");
    return q.get_num();
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// (2n-1)!! for odd arguments, (2n)!! for even; double_factorial(-1) == 1.
inline Integer double_factorial(long n) {
    if (n < -1) throw std::domain_error("double_factorial: argument < -1");
    if (n <= 0) return 1;
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer binomial(const Integer& n, long k) {
    if (k < 0) return 0;
    if (n >= 0 && n < k) return 0;
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

inline Integer binomial(long n, long k) { return binomial(Integer(n), k); }

inline Integer catalan(long n) {
    if (n < 0) return 0;
    return binomial(2 * n, n) / (n + 1);
}

// Number-theoretic Mobius function.
inline int moebius(long n) {
    if (n <= 0) throw std::domain_error("moebius: argument must be positive");
    int sign = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

// Ground sets are subsets of {0,...,63} stored as bit masks.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    while (m) {
        int e = __builtin_ctzll(m);
        out.push_back(e);
        m &= m - 1;
    }
    return out;
}

inline Mask full_mask(int n) {
    return n >= 64 ? ~Mask(0) : ((Mask(1) << n) - 1);
}

}  // namespace klm
