#include <catch2/catch_amalgamated.hpp>

#include "klm/poly.hpp"

using namespace klm;

TEST_CASE("ratio canonicalizes") {
    CHECK(ratio(3, 6) == ratio(1, 2));
    CHECK(ratio(-4, 8).get_str() == "-1/2");
    CHECK(ratio(5, -10).get_str() == "-1/2");
    CHECK_THROWS_AS(ratio(1, 0), std::domain_error);
    CHECK(to_integer(ratio(8, 4)) == 2);
    CHECK_THROWS_AS(to_integer(ratio(1, 2)), std::domain_error);
}

TEST_CASE("integer helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(7) == 105);
    CHECK(double_factorial(6) == 48);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(10, 11) == 0);
    CHECK(binomial(10, -1) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(catalan(0) == 1);
    CHECK(catalan(5) == 42);

    // squarefree sign pattern of the first few integers
    int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1};
    for (int n = 1; n <= 11; ++n) CHECK(moebius(n) == mu[n - 1]);
    // sum over divisors of 12
    CHECK(moebius(1) + moebius(2) + moebius(3) + moebius(4) + moebius(6) + moebius(12) == 0);
}

TEST_CASE("mask helpers") {
    CHECK(popcount(0b1011) == 3);
    CHECK(mask_elements(0b1010) == std::vector<int>{1, 3});
    CHECK(full_mask(3) == 0b111);
    CHECK(full_mask(64) == ~Mask(0));
}

TEST_CASE("IntPolynomial arithmetic") {
    IntPolynomial p({1, 5});   // 1 + 5t
    IntPolynomial q({0, -1, 2});  // -t + 2t^2
    CHECK(p.degree() == 1);
    CHECK((p + q).coeff(1) == 4);
    CHECK((p * q) == IntPolynomial({0, -1, -3, 10}));
    CHECK(p.eval(Integer(2)) == 11);
    CHECK(p.eval(ratio(1, 2)) == ratio(7, 2));
    CHECK(q.derivative() == IntPolynomial({-1, 4}));
    CHECK(IntPolynomial({3}).derivative().is_zero());
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);
    CHECK((Integer(3) * p) == IntPolynomial({3, 15}));
}

TEST_CASE("IntPolynomial reversal") {
    IntPolynomial p({1, 5});  // 1 + 5t
    CHECK(p.reversed(3) == IntPolynomial({0, 0, 5, 1}));
    CHECK(p.reversed(1) == IntPolynomial({5, 1}));
    CHECK_THROWS_AS(p.reversed(0), std::domain_error);
    // reversal is an involution at matched degree
    CHECK(p.reversed(1).reversed(1) == p);
}

TEST_CASE("IntPolynomial printing") {
    CHECK(IntPolynomial().to_string() == "0");
    CHECK(IntPolynomial({1, 5, 0, -2}).to_string() == "1 + 5*t - 2*t^3");
    CHECK(IntPolynomial({0, 1}).to_string() == "t");
    CHECK(IntPolynomial({-1, 0, 1}).to_string() == "-1 + t^2");
}

TEST_CASE("RatPolynomial division") {
    RatPolynomial a(IntPolynomial({-1, 0, 0, 1}));  // t^3 - 1
    RatPolynomial b(IntPolynomial({-1, 1}));        // t - 1
    auto [q, r] = a.divmod(b);
    CHECK(r.is_zero());
    CHECK(q == RatPolynomial(IntPolynomial({1, 1, 1})));

    RatPolynomial c(IntPolynomial({1, 2, 3}));
    auto [q2, r2] = c.divmod(b);
    CHECK(q2 * b + r2 == c);
    CHECK(r2.degree() < b.degree());
    CHECK_THROWS_AS(c.divmod(RatPolynomial{}), std::domain_error);
}

TEST_CASE("RatPolynomial primitive part") {
    RatPolynomial p({ratio(1, 2), ratio(3, 4)});
    RatPolynomial q = p.primitive();
    CHECK(q == RatPolynomial(IntPolynomial({2, 3})));
    // sign normalization
    RatPolynomial m({ratio(1, 1), ratio(-2, 1)});
    CHECK(m.primitive().leading() > 0);
    CHECK(m.primitive() == RatPolynomial(IntPolynomial({-1, 2})));
}

TEST_CASE("TPoly Laurent arithmetic") {
    TPoly p = TPoly::monomial(-2, ratio(1, 2)) + TPoly::monomial(1);
    CHECK(p.min_degree() == -2);
    CHECK(p.max_degree() == 1);
    CHECK(p.coeff(-2) == ratio(1, 2));
    CHECK(p.coeff(0) == 0);

    TPoly sq = p * p;
    CHECK(sq.coeff(-4) == ratio(1, 4));
    CHECK(sq.coeff(-1) == 1);
    CHECK(sq.coeff(2) == 1);

    CHECK(p.bar().coeff(2) == ratio(1, 2));
    CHECK(p.shifted(2).min_degree() == 0);
    CHECK(p.subst_power(3).coeff(-6) == ratio(1, 2));

    TPoly z = p - p;
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.min_degree(), std::domain_error);
}

TEST_CASE("TPoly conversions") {
    IntPolynomial p({1, 0, 7});
    TPoly t(p);
    CHECK(t.is_integer_polynomial());
    CHECK(t.to_int_polynomial() == p);

    TPoly laurent = TPoly::monomial(-1);
    CHECK(!laurent.is_integer_polynomial());
    CHECK_THROWS_AS(laurent.to_int_polynomial(), std::domain_error);

    TPoly frac = TPoly::constant(ratio(1, 2));
    CHECK(!frac.is_integer_polynomial());
}

TEST_CASE("TPoly eval") {
    TPoly p = TPoly::monomial(-1) + TPoly::monomial(2, 3);
    CHECK(p.eval(ratio(1, 2)) == ratio(11, 4));
    CHECK_THROWS_AS(p.eval(Rational(0)), std::domain_error);
}

TEST_CASE("polynomial-exponent binomials") {
    // C(e, 2) with e = 2t: (2t)(2t-1)/2 = 2t^2 - t
    TPoly e = TPoly::monomial(1, 2);
    TPoly b2 = tpoly_binomial(e, 2);
    CHECK(b2.coeff(2) == 2);
    CHECK(b2.coeff(1) == -1);
    // C(e, 0) = 1, C(e, negative) = 0
    CHECK(tpoly_binomial(e, 0) == TPoly::constant(1));
    CHECK(tpoly_binomial(e, -1).is_zero());
    // constant exponent reduces to the ordinary binomial
    CHECK(tpoly_binomial(TPoly::constant(7), 3) == TPoly::constant(35));
}
