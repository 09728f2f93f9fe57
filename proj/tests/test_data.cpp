#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tracehull/data.hpp"
#include "tracehull/moments.hpp"

using namespace tracehull;
using namespace tracehull::builtin;

TEST_CASE("packaged polynomial shapes") {
    CHECK(poly_q().term_count() == 32);   // 18 table entries, 14 mirrored off the diagonal
    CHECK(poly_r().term_count() == 16);
    CHECK(poly_p1().term_count() == 32);
    CHECK(poly_p2().term_count() == 16);
    CHECK(poly_p1().swap_xy() == poly_p1());
    CHECK(poly_p2().swap_xy() == poly_p2());
    CHECK(poly_q().swap_xy() == poly_q());
    CHECK(poly_r().swap_xy() == poly_r());
    // spot coefficients
    CHECK(poly_q().coeff({1, 0}) == Rational::parse_decimal("-12.543"));
    CHECK(poly_q().coeff({0, 1}) == Rational::parse_decimal("-12.543"));
    CHECK(poly_p1().coeff({4, 4}) == Rational(1));
    CHECK(poly_p2().coeff({0, 8}) == Rational::parse_decimal("0.4106920221952855"));
    CHECK(poly_p2().coeff({5, 0}) == Rational(0));
}

TEST_CASE("every packaged polynomial stays inside the known-moment span") {
    MomentVector tb = target_b();
    for (const auto* p : {&poly_q(), &poly_r(), &poly_p1(), &poly_p2()})
        CHECK_NOTHROW(expectation(*p, tb));
}

TEST_CASE("witness point lists") {
    CHECK(points_a1().size() == 33);
    CHECK(points_a2().size() == 33);
    // all points inside the box, exactly
    for (const auto& [x, y] : points_a1()) {
        CHECK(x.abs() <= Rational(2));
        CHECK(y.abs() <= Rational(2));
    }
    // sum list: coordinate sums at least the witness bound
    for (const auto& [x, y] : points_a1()) CHECK(x + y >= bound_a1_witness());
    // product list: products at least the witness bound
    for (const auto& [x, y] : points_a2()) CHECK(x * y >= bound_a2_witness());
}

TEST_CASE("case-a witnesses are probability measures on their regions") {
    for (const auto* w : {&witness_a1_opt(), &witness_a2max_opt(), &witness_a2min_opt()}) {
        Rational total(0);
        for (const auto& wt : w->weights) {
            CHECK(wt > Rational(0));
            total += wt;
        }
        CHECK(total == Rational(1));
        for (const auto& atom : w->atoms) CHECK(symmetric_atom_in_region(atom, w->region));
    }
}

TEST_CASE("packaged-data checksums") {
    // Golden integrity pins for the shipped tables; regenerate only on a
    // deliberate data change.
    CHECK(checksum_poly(poly_q()) == 0xfcc6599c531103bcull);
    CHECK(checksum_poly(poly_r()) == 0x2795b90387209ad5ull);
    CHECK(checksum_poly(poly_p1()) == 0x7e609ac59cae96b4ull);
    CHECK(checksum_poly(poly_p2()) == 0x7ba4e74dc3520f69ull);
    CHECK(checksum_points(points_a1()) == 0x48a2faa23a635870ull);
    CHECK(checksum_points(points_a2()) == 0x79ff355ef071f059ull);
}

TEST_CASE("builtin lookups") {
    CHECK(find_poly("p1").has_value());
    CHECK_FALSE(find_poly("nope").has_value());
    CHECK(find_points("appendix-a2") != nullptr);
    CHECK(find_case_a_witness("a2min-opt") != nullptr);
    CHECK(find_region("thm-a1").has_value());
}
