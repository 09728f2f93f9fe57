#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "tracehull/data.hpp"
#include "tracehull/moments.hpp"
#include "tracehull/poly.hpp"

using namespace tracehull;

namespace {

Poly2 random_poly(std::mt19937_64& rng, int max_deg = 4, int max_terms = 6) {
    std::uniform_int_distribution<int> deg(0, max_deg), nt(1, max_terms);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    Poly2 p;
    int terms = nt(rng);
    for (int i = 0; i < terms; ++i) p.add_term({deg(rng), deg(rng)}, Rational(num(rng), den(rng)));
    return p;
}

}  // namespace

TEST_CASE("construction keeps canonical form") {
    Poly2 x = Poly2::variable_x();
    CHECK((x + (-x)).is_zero());
    Poly2 p = Poly2::monomial(2, 1, Rational(3, 2));
    p.add_term({2, 1}, Rational(-3, 2));
    CHECK(p.is_zero());
    CHECK(Poly2::monomial(1, 0, 0).is_zero());
}

TEST_CASE("arithmetic identities") {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    CHECK((x + y) * (x - y) == x * x - y * y);
    Poly2 two_minus_x = Poly2::constant(2) - x;
    Poly2 two_minus_y = Poly2::constant(2) - y;
    Poly2 expanded = poly_from_terms({{0, 0, "4"}, {1, 0, "-2"}, {0, 1, "-2"}, {1, 1, "1"}});
    CHECK(two_minus_x * two_minus_y == expanded);
}

TEST_CASE("mul commutes and distributes (random, exact)") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 200; ++i) {
        Poly2 a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + a.scale(Rational(-1))).is_zero());
    }
}

TEST_CASE("evaluation") {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    Poly2 p = x * x + y * y;
    CHECK(p.eval(Rational(1), Rational(1)) == Rational(2));
    CHECK(p.eval(2.0, -2.0) == 8.0);
    BigReal v = p.eval(BigReal::from_long(3, 40), BigReal::from_long(4, 40));
    CHECK(v.to_double() == 25.0);

    // rational vs bigreal vs double agree on random polynomials
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        Poly2 q = random_poly(rng);
        Rational rx(7, 5), ry(-3, 4);
        Rational exact = q.eval(rx, ry);
        BigReal big = q.eval(BigReal::from_rational(rx, 40), BigReal::from_rational(ry, 40));
        CHECK((big - BigReal::from_rational(exact, 40)).abs() <= BigReal::pow10(-30, 40));
        CHECK(q.eval(rx.to_double(), ry.to_double()) == doctest::Approx(exact.to_double()).epsilon(1e-10));
    }
}

TEST_CASE("eval of packaged certificates near their reported minima") {
    BigReal qx = BigReal::from_string("-1.81913", 60), qy = BigReal::from_string("0.644208", 60);
    double qv = builtin::poly_q().eval(qx, qy).to_double();
    CHECK(std::abs(qv - (-1.93656)) < 1e-3);

    BigReal px = BigReal::from_string("1.122946224307864", 60);
    double p1v = builtin::poly_p1().eval(px, px).to_double();
    CHECK(std::abs(p1v - (-0.495177804465548)) < 1e-9);
}

TEST_CASE("gradient") {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    auto [gx, gy] = (x * x * y).gradient();
    CHECK(gx == Poly2::monomial(1, 1, 2));
    CHECK(gy == x * x);
    auto [cx, cy] = Poly2::constant(5).gradient();
    CHECK(cx.is_zero());
    CHECK(cy.is_zero());
}

TEST_CASE("gradient matches central differences") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> pt(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        Poly2 p = random_poly(rng, 5, 8);
        auto [gx, gy] = p.gradient();
        double x = pt(rng), y = pt(rng), h = 1e-5;
        double fd_x = (p.eval(x + h, y) - p.eval(x - h, y)) / (2 * h);
        double fd_y = (p.eval(x, y + h) - p.eval(x, y - h)) / (2 * h);
        // crude sup of third derivatives on the box from coefficient sums
        double bound = 0;
        for (const auto& [m, c] : p.terms()) bound += std::abs(c.to_double()) * 1024.0;
        CHECK(std::abs(gx.eval(x, y) - fd_x) <= bound * h * h + 1e-9);
        CHECK(std::abs(gy.eval(x, y) - fd_y) <= bound * h * h + 1e-9);
    }
}

TEST_CASE("swap and reflect") {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    CHECK(builtin::poly_p1().swap_xy() == builtin::poly_p1());
    CHECK(builtin::poly_q().swap_xy() == builtin::poly_q());
    CHECK((x + y).reflect(-1, -1) == -(x + y));
    CHECK((x * y).reflect(-1, 1) == -(x * y));
    CHECK((x * x).reflect(-1, 1) == x * x);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
        Poly2 p = random_poly(rng);
        Rational rx(5, 7), ry(-9, 11);
        CHECK(p.swap_xy().eval(rx, ry) == p.eval(ry, rx));
        CHECK(p.reflect(-1, -1).eval(rx, ry) == p.eval(-rx, -ry));
    }
}

TEST_CASE("reflect in x keeps split-case expectation") {
    // odd-in-x monomials have zero averages, so the mirror has the same one
    MomentVector tb = target_b();
    Rational er = expectation(builtin::poly_r(), tb);
    CHECK(expectation(builtin::poly_r().reflect(-1, 1), tb) == er);
}

TEST_CASE("check_identity") {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    std::array<Poly2, 2> fac = {x + y, x - y};
    CHECK(Poly2::check_identity(fac, x * x - y * y));
    std::array<Poly2, 1> sq = {(x + y) * (x + y)};
    CHECK_FALSE(Poly2::check_identity(sq, x * x + y * y));
}

TEST_CASE("substitute_line") {
    // p(x, y) = x^2 y restricted to x = t, y = 3 - t:  t^2 (3 - t) = 3t^2 - t^3
    Poly2 p = Poly2::monomial(2, 1, 1);
    auto coeffs = p.substitute_line(Rational(1), Rational(0), Rational(-1), Rational(3));
    REQUIRE(coeffs.size() == 4);
    CHECK(coeffs[0] == Rational(0));
    CHECK(coeffs[1] == Rational(0));
    CHECK(coeffs[2] == Rational(3));
    CHECK(coeffs[3] == Rational(-1));
}
