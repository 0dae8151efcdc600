#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "klm/series.hpp"
#include "klm/symfunc.hpp"

using namespace klm;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

TPoly tconst(long c) { return TPoly::constant(Rational(c)); }

// t - 2 and friends
TPoly linear_t(long a, long b) {  // a*t + b
    TPoly p = TPoly::monomial(1, Rational(a));
    p += TPoly::constant(Rational(b));
    return p;
}

SymFunc random_symfunc(std::mt19937& rng, int degree, SymBasis basis) {
    auto parts = partitions_of(degree);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> cdist(-3, 3);
    std::uniform_int_distribution<int> ddist(-2, 2);
    SymFunc f(degree, basis);
    for (const auto& la : parts) {
        if (pick(rng) == 0) continue;
        TPoly c;
        for (int k = 0; k < 2; ++k) c.add_to(ddist(rng), Rational(cdist(rng)));
        f.add_term(la, c);
    }
    return f;
}

// specialize every p_k to the constant c (the c-letter evaluation)
Rational all_ones_eval(const SymFunc& f, long c) {
    SymFunc pw = basis_convert(f, SymBasis::power);
    Rational total = 0;
    for (const auto& [la, m] : pw.terms()) {
        Rational coeff = m.eval(Rational(1));  // t-free inputs only
        Rational scale = 1;
        for (int i = 0; i < la.length(); ++i) scale *= Rational(c);
        total += coeff * scale;
    }
    return total;
}

TPoly tpoly_pow(const TPoly& base, int n) {
    TPoly r = TPoly::constant(1);
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
}

}  // namespace

TEST_CASE("partitions and centralizer orders") {
    CHECK_THROWS_AS(P({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(P({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(P({-1}), std::invalid_argument);

    CHECK(P({4, 2, 1}).conjugate() == P({3, 2, 1, 1}));
    CHECK(P({3, 3}).conjugate() == P({2, 2, 2}));
    CHECK(P({}).conjugate() == P({}));
    CHECK(P({5}).conjugate() == P({1, 1, 1, 1, 1}));
    CHECK(P({4, 2, 1}).weight() == 7);
    CHECK(P({4, 2, 1}).length() == 3);
    CHECK(P({4, 2, 1}).part(5) == 0);

    // partition numbers p(0..10)
    const int pn[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) {
        auto parts = partitions_of(n);
        CHECK(static_cast<int>(parts.size()) == pn[n]);
        for (const auto& la : parts) CHECK(la.weight() == n);
        for (size_t i = 1; i < parts.size(); ++i) CHECK(!(parts[i - 1] == parts[i]));
    }

    CHECK(z_lambda(P({})) == 1);
    CHECK(z_lambda(P({5})) == 5);
    CHECK(z_lambda(P({1, 1, 1, 1})) == 24);
    CHECK(z_lambda(P({2, 1})) == 2);
    CHECK(z_lambda(P({2, 2, 1})) == 8);
    CHECK(z_lambda(P({3, 3, 2})) == 36);

    // class sizes n!/z_mu sum to n!
    for (int n = 1; n <= 8; ++n) {
        Integer total = 0;
        for (const auto& mu : partitions_of(n)) total += factorial(static_cast<unsigned long>(n)) / z_lambda(mu);
        CHECK(total == factorial(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("symmetric group characters") {
    // S_3 table
    std::map<std::pair<Partition, Partition>, long> s3 = {
        {{P({3}), P({1, 1, 1})}, 1},    {{P({3}), P({2, 1})}, 1},    {{P({3}), P({3})}, 1},
        {{P({2, 1}), P({1, 1, 1})}, 2}, {{P({2, 1}), P({2, 1})}, 0}, {{P({2, 1}), P({3})}, -1},
        {{P({1, 1, 1}), P({1, 1, 1})}, 1},
        {{P({1, 1, 1}), P({2, 1})}, -1},
        {{P({1, 1, 1}), P({3})}, 1},
    };
    for (const auto& [key, val] : s3) CHECK(mn_character(key.first, key.second) == val);

    // S_4 table, classes ordered (1^4),(2,1,1),(2,2),(3,1),(4)
    std::vector<Partition> classes = {P({1, 1, 1, 1}), P({2, 1, 1}), P({2, 2}), P({3, 1}), P({4})};
    std::map<Partition, std::vector<long>> s4 = {
        {P({4}), {1, 1, 1, 1, 1}},
        {P({3, 1}), {3, 1, -1, 0, -1}},
        {P({2, 2}), {2, 0, 2, -1, 0}},
        {P({2, 1, 1}), {3, -1, -1, 0, 1}},
        {P({1, 1, 1, 1}), {1, -1, 1, 1, -1}},
    };
    for (const auto& [la, row] : s4)
        for (size_t c = 0; c < classes.size(); ++c)
            CHECK(mn_character(la, classes[c]) == row[c]);

    // value at the identity is the hook-length dimension
    for (int n = 0; n <= 8; ++n) {
        std::vector<int> ones(static_cast<size_t>(n), 1);
        Partition id(ones);
        for (const auto& la : partitions_of(n)) CHECK(mn_character(la, id) == hook_dimension(la));
    }

    // row orthogonality: sum_mu chi^la(mu) chi^nu(mu) / z_mu = delta
    for (int n = 1; n <= 6; ++n) {
        auto parts = partitions_of(n);
        for (const auto& la : parts)
            for (const auto& nu : parts) {
                Rational dot = 0;
                for (const auto& mu : parts)
                    dot += ratio(mn_character(la, mu) * mn_character(nu, mu), z_lambda(mu));
                CHECK(dot == Rational(la == nu ? 1 : 0));
            }
    }

    CHECK_THROWS_AS(mn_character(P({2}), P({3})), std::invalid_argument);
}

TEST_CASE("hook dimensions") {
    CHECK(hook_dimension(P({})) == 1);
    CHECK(hook_dimension(P({7})) == 1);
    CHECK(hook_dimension(P({1, 1, 1, 1})) == 1);
    CHECK(hook_dimension(P({2, 1})) == 2);
    CHECK(hook_dimension(P({2, 2})) == 2);
    CHECK(hook_dimension(P({3, 1})) == 3);
    CHECK(hook_dimension(P({4, 2})) == 9);
    CHECK(hook_dimension(P({3, 2, 1})) == 16);

    // sum of squares of dimensions is n!
    for (int n = 1; n <= 9; ++n) {
        Integer total = 0;
        for (const auto& la : partitions_of(n)) {
            Integer d = hook_dimension(la);
            total += d * d;
        }
        CHECK(total == factorial(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("basis conversion") {
    // s_2 = (p_11 + p_2)/2, s_11 = (p_11 - p_2)/2
    SymFunc s2p = basis_convert(SymFunc::schur(P({2})), SymBasis::power);
    CHECK(s2p.coeff(P({1, 1})) == TPoly::constant(ratio(1, 2)));
    CHECK(s2p.coeff(P({2})) == TPoly::constant(ratio(1, 2)));
    SymFunc s11p = basis_convert(SymFunc::schur(P({1, 1})), SymBasis::power);
    CHECK(s11p.coeff(P({1, 1})) == TPoly::constant(ratio(1, 2)));
    CHECK(s11p.coeff(P({2})) == TPoly::constant(ratio(-1, 2)));

    // p_2 = s_2 - s_11
    SymFunc p2s = basis_convert(SymFunc::power(P({2})), SymBasis::schur);
    CHECK(p2s.coeff(P({2})) == tconst(1));
    CHECK(p2s.coeff(P({1, 1})) == tconst(-1));

    // round trips with Laurent multiplicities
    std::mt19937 rng(20240819);
    for (int trial = 0; trial < 30; ++trial) {
        int deg = trial % 7;
        SymFunc f = random_symfunc(rng, deg, trial % 2 ? SymBasis::schur : SymBasis::power);
        SymBasis other = f.basis() == SymBasis::schur ? SymBasis::power : SymBasis::schur;
        CHECK(basis_convert(basis_convert(f, other), f.basis()) == f);
    }

    // degree-0 and zero cases
    CHECK(basis_convert(SymFunc::one(), SymBasis::power) == SymFunc::power(P({})));
    SymFunc zero_s(3, SymBasis::schur);
    CHECK(basis_convert(zero_s, SymBasis::power).is_zero());

    CHECK_THROWS_AS(basis_convert(SymFunc::schur(P({15})), SymBasis::power), resource_error);
}

TEST_CASE("induction product") {
    SymFunc s1 = SymFunc::schur(P({1}));
    SymFunc s2 = SymFunc::schur(P({2}));
    SymFunc s11 = SymFunc::schur(P({1, 1}));

    CHECK(s1 * s1 == s2 + s11);
    CHECK(s2 * s1 == SymFunc::schur(P({3})) + SymFunc::schur(P({2, 1})));
    CHECK(s2 * s2 ==
          SymFunc::schur(P({4})) + SymFunc::schur(P({3, 1})) + SymFunc::schur(P({2, 2})));
    CHECK(SymFunc::schur(P({2, 1})) * s1 ==
          SymFunc::schur(P({3, 1})) + SymFunc::schur(P({2, 2})) + SymFunc::schur(P({2, 1, 1})));

    // power basis stays in power basis, no conversion round trip
    SymFunc p2 = SymFunc::power(P({2}));
    SymFunc p21 = p2 * SymFunc::power(P({1}));
    CHECK(p21.basis() == SymBasis::power);
    CHECK(p21 == SymFunc::power(P({2, 1})));

    // unit, commutativity, associativity
    CHECK(SymFunc::one() * s2 == s2);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        SymFunc f = random_symfunc(rng, 2 + trial % 2, SymBasis::schur);
        SymFunc g = random_symfunc(rng, 1 + trial % 3, SymBasis::schur);
        CHECK(f * g == g * f);
    }
    CHECK((s1 * s1) * s2 == s1 * (s1 * s2));

    // dimension of an induction product: binomial(n+m, n) * dim f * dim g
    SymFunc prod = SymFunc::schur(P({2, 1})) * SymFunc::schur(P({2}));
    CHECK(dimension(prod).eval(Rational(1)) ==
          Rational(binomial(5, 2) * hook_dimension(P({2, 1})) * hook_dimension(P({2}))));

    CHECK_THROWS_AS(SymFunc::schur(P({8})) * SymFunc::schur(P({8})), resource_error);
}

TEST_CASE("kronecker product") {
    // trivial representation is the unit
    for (const auto& la : partitions_of(4))
        CHECK(kronecker(SymFunc::schur(P({4})), SymFunc::schur(la)) == SymFunc::schur(la));

    // sign twist conjugates the shape
    for (const auto& la : partitions_of(4))
        CHECK(kronecker(SymFunc::schur(P({1, 1, 1, 1})), SymFunc::schur(la)) ==
              SymFunc::schur(la.conjugate()));

    // standard squared in S_3
    SymFunc std3 = SymFunc::schur(P({2, 1}));
    CHECK(kronecker(std3, std3) ==
          SymFunc::schur(P({3})) + SymFunc::schur(P({2, 1})) + SymFunc::schur(P({1, 1, 1})));

    // diagonal in the power basis
    SymFunc p21 = SymFunc::power(P({2, 1}));
    SymFunc p3 = SymFunc::power(P({3}));
    CHECK(kronecker(p21, p3).is_zero());
    CHECK(kronecker(p21, p21) == Rational(z_lambda(P({2, 1}))) * p21);

    // dimensions multiply
    SymFunc a = SymFunc::schur(P({3, 1}));
    SymFunc b = SymFunc::schur(P({2, 2}));
    CHECK(dimension(kronecker(a, b)).eval(Rational(1)) ==
          Rational(hook_dimension(P({3, 1})) * hook_dimension(P({2, 2}))));

    // zero absorbs, mismatched degrees rejected
    CHECK(kronecker(SymFunc(4, SymBasis::schur), a).is_zero());
    CHECK_THROWS_AS(kronecker(SymFunc::schur(P({2})), SymFunc::schur(P({3}))),
                    std::invalid_argument);
}

TEST_CASE("plethysm") {
    SymFunc s1 = SymFunc::schur(P({1}));

    // p_2[(t-2) s_1] = (t^2 - 2) p_2
    SymFunc arg = linear_t(1, -2) * s1;
    SymFunc pl = plethysm(SymFunc::power(P({2})), arg);
    TPoly t2m2 = TPoly::monomial(2);
    t2m2 += TPoly::constant(Rational(-2));
    CHECK(pl == t2m2 * SymFunc::power(P({2})));

    // substitution into s_1 is the identity, even with t-dependent multiplicities
    std::mt19937 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        SymFunc f = random_symfunc(rng, 1 + trial % 4, SymBasis::schur);
        CHECK(plethysm(f, s1) == f);
    }

    // s_n[s_1] = s_n
    for (int n = 1; n <= 5; ++n)
        CHECK(plethysm(SymFunc::schur(P({n})), s1) == SymFunc::schur(P({n})));

    // classical symmetric/exterior squares of S^2
    SymFunc s2 = SymFunc::schur(P({2}));
    CHECK(plethysm(s2, s2) == SymFunc::schur(P({4})) + SymFunc::schur(P({2, 2})));
    CHECK(plethysm(SymFunc::schur(P({1, 1})), s2) == SymFunc::schur(P({3, 1})));
    CHECK(plethysm(SymFunc::power(P({2})), SymFunc::power(P({2}))) == SymFunc::power(P({4})));

    // exponential form: the all-ones power coefficient of s_n[(t-2)s_1]
    // is (t-2)^n / n!
    for (int n = 1; n <= 6; ++n) {
        SymFunc pw = basis_convert(plethysm(SymFunc::schur(P({n})), arg), SymBasis::power);
        std::vector<int> ones(static_cast<size_t>(n), 1);
        TPoly expect = ratio(1, factorial(static_cast<unsigned long>(n))) * tpoly_pow(linear_t(1, -2), n);
        CHECK(pw.coeff(Partition(ones)) == expect);
    }

    CHECK_THROWS_AS(plethysm(SymFunc::schur(P({4})), SymFunc::schur(P({4}))), resource_error);
}

TEST_CASE("complete homogeneous evaluation") {
    // h_n at c ones counts multisets: binomial(n+c-1, n)
    for (int n = 1; n <= 6; ++n)
        for (long c = 1; c <= 4; ++c)
            CHECK(all_ones_eval(SymFunc::schur(P({n})), c) == Rational(binomial(n + c - 1, n)));
    // e_n at c ones counts subsets
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> ones(static_cast<size_t>(n), 1);
        for (long c = 1; c <= 5; ++c)
            CHECK(all_ones_eval(SymFunc::schur(Partition(ones)), c) == Rational(binomial(c, n)));
    }
}

TEST_CASE("schur positivity and dimension preconditions") {
    SymFunc f = SymFunc::schur(P({3, 1})) + tconst(4) * SymFunc::schur(P({2, 2}));
    CHECK(is_schur_positive(f));
    CHECK(!is_schur_positive(f - tconst(9) * SymFunc::schur(P({2, 2}))));
    CHECK(is_schur_positive(SymFunc(5, SymBasis::schur)));
    // t-graded multiplicities checked coefficientwise
    SymFunc g = linear_t(1, 1) * SymFunc::schur(P({2}));
    CHECK(is_schur_positive(g));
    CHECK(!is_schur_positive(linear_t(1, -1) * SymFunc::schur(P({2}))));

    CHECK_THROWS_AS(is_schur_positive(SymFunc::power(P({2}))), std::invalid_argument);
    CHECK_THROWS_AS(dimension(SymFunc::power(P({2}))), std::invalid_argument);
    CHECK(dimension(SymFunc(3, SymBasis::power)).is_zero());
    CHECK(dimension(SymFunc::schur(P({4, 2}))) == tconst(9));
}

TEST_CASE("strong log concavity of sequences") {
    // constant sequence passes
    std::vector<SymFunc> constant(4, SymFunc::schur(P({2})));
    CHECK(strong_log_concave_check(constant).pass());

    // scaled middle terms pass
    std::vector<SymFunc> scaled = {SymFunc::schur(P({2})), tconst(2) * SymFunc::schur(P({2})),
                                   SymFunc::schur(P({2}))};
    CHECK(strong_log_concave_check(scaled).pass());

    // a gap in the middle fails at the straddling quadruple
    std::vector<SymFunc> gap = {SymFunc::schur(P({2})), SymFunc(2, SymBasis::schur),
                                SymFunc::schur(P({2}))};
    auto rep = strong_log_concave_check(gap);
    CHECK(!rep.pass());
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0] == std::array<int, 4>{0, 1, 1, 2});

    CHECK_THROWS_AS(
        strong_log_concave_check({SymFunc::schur(P({2})), SymFunc::schur(P({3}))}),
        std::invalid_argument);
}

TEST_CASE("symfunc arithmetic edge cases") {
    SymFunc s2 = SymFunc::schur(P({2}));
    SymFunc zero;  // default: degree 0 zero
    CHECK((zero + s2) == s2);
    CHECK((s2 + zero) == s2);
    CHECK((s2 - s2).is_zero());
    CHECK((zero - s2) == -s2);
    CHECK(zero == SymFunc(7, SymBasis::power));  // zeros agree across degrees

    CHECK_THROWS_AS(s2 + SymFunc::schur(P({3})), std::invalid_argument);
    CHECK_THROWS_AS(s2 + SymFunc::power(P({2})), std::invalid_argument);
    CHECK_THROWS_AS(s2.add_term(P({3}), tconst(1)), std::invalid_argument);
    CHECK((tconst(0) * s2).is_zero());

    // scalar distributes over the expansion
    SymFunc h = linear_t(2, 1) * (s2 + SymFunc::schur(P({1, 1})));
    CHECK(h.coeff(P({2})) == linear_t(2, 1));
    CHECK(h.coeff(P({1, 1})) == linear_t(2, 1));
}

TEST_CASE("series with symmetric function coefficients") {
    // exp(p_1 u): coefficient of u^n is p_{1^n} / n!
    PowerSeries<SymFunc> a(Var::u, 5, SymFunc());
    a.set(1, SymFunc::power(P({1})));
    PowerSeries<SymFunc> ex = series_exp(a);
    CHECK(ex.coeff(0) == SymFunc::one());
    CHECK(ex.coeff(1) == SymFunc::power(P({1})));
    CHECK(ex.coeff(3) == ratio(1, 6) * SymFunc::power(P({1, 1, 1})));
    CHECK(ex.coeff(5) == ratio(1, 120) * SymFunc::power(P({1, 1, 1, 1, 1})));

    // log recovers the exponent
    PowerSeries<SymFunc> lg = series_log(ex);
    CHECK(lg == a);

    // products convolve with the induction product
    PowerSeries<SymFunc> b(Var::u, 3, SymFunc());
    b.set(0, SymFunc::one());
    b.set(1, SymFunc::schur(P({1})));
    PowerSeries<SymFunc> sq = b * b;
    CHECK(sq.coeff(1) == TPoly::constant(2) * SymFunc::schur(P({1})));
    CHECK(sq.coeff(2) == SymFunc::schur(P({1})) * SymFunc::schur(P({1})));
}
