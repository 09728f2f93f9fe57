#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tracehull/data.hpp"
#include "tracehull/moments.hpp"

using namespace tracehull;

TEST_CASE("catalan numbers") {
    CHECK(catalan(0) == Rational(1));
    CHECK(catalan(1) == Rational(1));
    CHECK(catalan(2) == Rational(2));
    CHECK(catalan(3) == Rational(5));
    CHECK(catalan(4) == Rational(14));
    CHECK(catalan(8) == Rational(1430));
}

TEST_CASE("haar_moment_b") {
    CHECK(haar_moment_b(2, 0) == Rational(1));
    CHECK(haar_moment_b(3, 3) == Rational(0));
    CHECK(haar_moment_b(4, 4) == Rational(4));
    CHECK(haar_moment_b(0, 0) == Rational(1));
    CHECK(haar_moment_b(8, 0) == Rational(14));
    CHECK(haar_moment_b(1, 2) == Rational(0));
}

TEST_CASE("known monomials: membership rule and canonical order") {
    const auto& monos = known_monomials_b();
    REQUIRE(monos.size() == 32);
    CHECK(monos.front() == Monomial{1, 0});
    CHECK(monos.back() == Monomial{0, 8});
    auto has = [&](int k, int l) {
        return std::find(monos.begin(), monos.end(), Monomial{k, l}) != monos.end();
    };
    CHECK_FALSE(has(5, 1));
    CHECK(has(5, 0));
    CHECK(has(4, 4));
    CHECK_FALSE(has(0, 0));
    CHECK_FALSE(has(6, 2));
    // frozen order, spot checks
    CHECK(monos[2] == Monomial{2, 0});
    CHECK(monos[3] == Monomial{1, 1});
    CHECK(monos[29] == Monomial{8, 0});
    CHECK(monos[30] == Monomial{4, 4});
}

TEST_CASE("target vectors") {
    MomentVector tb = target_b();
    std::vector<long> expected = {0, 0, 1, 0, 1, 0, 0, 0, 0, 2, 0, 1, 0, 2, 0, 0,
                                  0, 0, 0, 0, 5, 2, 0, 2, 5, 0, 0, 0, 0, 14, 4, 14};
    REQUIRE(tb.values.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) CHECK(tb.values[i] == Rational(expected[i]));

    MomentVector ta = target_a();
    REQUIRE(ta.values.size() == 5);
    CHECK(ta.values[0] == Rational(0));
    CHECK(ta.values[1] == Rational(-1));
    CHECK(ta.values[2] == Rational(3));
    CHECK(ta.values[3] == Rational(0));
    CHECK(ta.values[4] == Rational(2));
}

TEST_CASE("constraints_from_poles") {
    MomentVector m = constraints_from_poles(standard_pole_spec_a());
    CHECK(m.values == target_a().values);

    // single constraint cannot pin everything down
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    CHECK_THROWS_WITH_AS(constraints_from_poles({{x + y, 0}}),
                         doctest::Contains("underdetermined"), input_error);

    // out-of-span trace polynomial
    CHECK_THROWS_AS(constraints_from_poles({{Poly2::monomial(3, 2, 1), 0}}), input_error);

    // the square of the 5-dim trace forces E[x^2 y^2] = 2 once E[xy] is pinned
    Poly2 tr_w = x * y + Poly2::constant(1);
    std::vector<PoleConstraint> spec = standard_pole_spec_a();
    MomentVector full = constraints_from_poles(spec);
    CHECK(expectation(x * x * y * y, full) == Rational(2));
}

TEST_CASE("expectation exact values") {
    MomentVector tb = target_b();
    CHECK(expectation(builtin::poly_q(), tb) == Rational(-51, 25));
    CHECK(expectation(builtin::poly_r(), tb) == Rational(-249, 25));
    CHECK(expectation(Poly2::constant(1), tb) == Rational(1));
    Rational p1 = expectation(builtin::poly_p1(), tb);
    CHECK(p1 == Rational::parse_decimal("-0.4951778044674"));
    Rational p2 = expectation(builtin::poly_p2(), tb);
    CHECK(p2 == Rational::parse_decimal("-0.5762415364653239"));
}

TEST_CASE("expectation rejects unknown monomials") {
    MomentVector tb = target_b();
    try {
        expectation(Poly2::monomial(5, 1, 1), tb);
        FAIL("expected unknown_moment_error");
    } catch (const unknown_moment_error& e) {
        CHECK(e.monomial == Monomial{5, 1});
        CHECK(std::string(e.what()).find("x^5*y") != std::string::npos);
    }
}

TEST_CASE("expectation is linear") {
    std::mt19937_64 rng(41);
    MomentVector tb = target_b();
    const auto& monos = known_monomials_b();
    std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    for (int i = 0; i < 100; ++i) {
        Poly2 p, q;
        for (int t = 0; t < 4; ++t) {
            auto mp = monos[pick(rng)], mq = monos[pick(rng)];
            p.add_term(mp, Rational(num(rng), den(rng)));
            q.add_term(mq, Rational(num(rng), den(rng)));
        }
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(expectation(p.scale(a) + q.scale(b), tb) ==
              a * expectation(p, tb) + b * expectation(q, tb));
    }
}

TEST_CASE("split-case averages factor over coordinates") {
    for (const Monomial& m : known_monomials_b())
        CHECK(haar_moment_b(m.dx, m.dy) == haar_moment_b(m.dx, 0) * haar_moment_b(0, m.dy));
}

TEST_CASE("expectation invariant under swap and double reflection") {
    MomentVector tb = target_b();
    for (const Poly2* p : {&builtin::poly_q(), &builtin::poly_r(), &builtin::poly_p1(), &builtin::poly_p2()}) {
        Rational e = expectation(*p, tb);
        CHECK(expectation(p->swap_xy(), tb) == e);
        CHECK(expectation(p->reflect(-1, -1), tb) == e);
    }
}

TEST_CASE("featurize") {
    auto z = featurize(Rational(0), Rational(0), MomentBasis::b32());
    for (const auto& v : z) CHECK(v.is_zero());

    auto a5 = featurize(Rational(1), Rational(1), MomentBasis::a5());
    std::vector<long> expect = {2, 1, 2, 2, 1};
    for (size_t i = 0; i < expect.size(); ++i) CHECK(a5[i] == Rational(expect[i]));

    auto b32 = featurize(Rational(2), Rational(2), MomentBasis::b32());
    const auto& monos = known_monomials_b();
    for (size_t i = 0; i < monos.size(); ++i)
        CHECK(b32[i] == Rational(2).pow(static_cast<unsigned>(monos[i].degree())));
    CHECK(b32[0] == Rational(2));
    CHECK(b32.back() == Rational(256));
}

TEST_CASE("symmetric-coordinate features match the symmetric basis") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<long> num(-8, 8), den(1, 5);
    for (int i = 0; i < 100; ++i) {
        Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        auto direct = featurize(x, y, MomentBasis::a5());
        auto sym = featurize_sym(x + y, x * y);
        CHECK(direct == sym);
    }
}

TEST_CASE("a1_a2") {
    auto [a1, a2] = a1_a2(Rational(0), Rational(0));
    CHECK(a1 == Rational(0));
    CHECK(a2 == Rational(2));
    auto [b1, b2] = a1_a2(Rational(-3, 5), Rational(2));
    CHECK(b1 == Rational(7, 5));
    CHECK(b2 == Rational(4, 5));
    auto [c1, c2] = a1_a2(Rational(2), Rational(2));
    CHECK(c1 == Rational(4));
    CHECK(c2 == Rational(6));
}

TEST_CASE("semicircle sampler moments") {
    SemicircleSampler s(0);
    const int n = 1000000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        double x = s.next();
        REQUIRE(x >= -2.0);
        REQUIRE(x <= 2.0);
        m1 += x;
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 0.01);
    CHECK(std::abs(m2 - 1.0) < 0.01);
    CHECK(std::abs(m4 - 2.0) < 0.02);
}
