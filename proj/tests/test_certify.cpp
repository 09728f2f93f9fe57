#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tracehull/certify.hpp"
#include "tracehull/data.hpp"
#include "tracehull/errors.hpp"

using namespace tracehull;

TEST_CASE("hyperplane: q certificate is valid with a certified bound") {
    auto rep = verify_hyperplane(builtin::poly_q(), Region::sum_geq(builtin::bound_q()), target_b(), {});
    CHECK(rep.verdict == Verdict::Valid);
    CHECK(rep.expectation == Rational(-51, 25));
    CHECK(std::abs(rep.margin.to_double() - 0.10344) < 1e-3);
    CHECK(rep.bound.bound.to_double() > -2.04);
    CHECK(rep.conclusion.find("positive proportion") != std::string::npos);
}

TEST_CASE("hyperplane: r certificate is valid") {
    auto rep = verify_hyperplane(builtin::poly_r(), Region::product_geq(builtin::bound_r()), target_b(), {});
    CHECK(rep.verdict == Verdict::Valid);
    CHECK(rep.expectation == Rational(-249, 25));
    CHECK(std::abs(rep.margin.to_double() - (9.96 - 8.32369)) < 1e-3);
}

TEST_CASE("hyperplane: q over a weaker bound is invalid") {
    auto rep = verify_hyperplane(builtin::poly_q(), Region::sum_geq(Rational(-3)), target_b(), {});
    CHECK(rep.verdict == Verdict::Invalid);
    CHECK(rep.min_result.value.to_double() < -2.04);
}

TEST_CASE("hyperplane: p1 at 60 digits is valid-coarse with a hair of margin") {
    auto rep = verify_hyperplane(builtin::poly_p1(), Region::sum_geq(builtin::bound_p1()), target_b(), {});
    CHECK(rep.verdict == Verdict::ValidCoarse);
    CHECK(rep.margin.sgn() > 0);
    double margin = rep.margin.to_double();
    CHECK(margin > 1e-12);
    CHECK(margin < 3e-12);
}

TEST_CASE("hyperplane: p2 at 60 digits is valid-coarse") {
    auto rep = verify_hyperplane(builtin::poly_p2(), Region::product_geq(builtin::bound_p2()), target_b(), {});
    CHECK(rep.verdict == Verdict::ValidCoarse);
    CHECK(rep.margin.sgn() > 0);
    CHECK(rep.margin.to_double() < 1e-12);
}

TEST_CASE("hyperplane: mirror certificates") {
    // the average is invariant under (x,y) -> (-x,-y), so the reflected
    // polynomial certifies the reflected region
    Region mirrored = Region::sum_geq(builtin::bound_q()).mirrored();
    CHECK(mirrored.constraint->dir == ConstraintDir::Leq);
    auto rep = verify_hyperplane(builtin::poly_q().reflect(-1, -1), mirrored, target_b(), {});
    CHECK(rep.verdict == Verdict::Valid);
    CHECK(rep.expectation == Rational(-51, 25));

    // product-side mirror flips x only
    Region prod_mirror = Region::product_leq(-builtin::bound_r());
    auto rep2 = verify_hyperplane(builtin::poly_r().reflect(-1, 1), prod_mirror, target_b(), {});
    CHECK(rep2.verdict == Verdict::Valid);
}

TEST_CASE("hyperplane: out-of-span polynomial is rejected") {
    CHECK_THROWS_AS(verify_hyperplane(Poly2::monomial(5, 1, 1), Region::full_box(), target_b(), {}),
                    unknown_moment_error);
}

TEST_CASE("measure: generic-case witnesses verify with zero residual") {
    MomentVector ta = target_a();
    for (const auto* w : {&builtin::witness_a1_opt(), &builtin::witness_a2max_opt(), &builtin::witness_a2min_opt()}) {
        auto rep = verify_measure(w->atoms, w->weights, w->region, ta);
        CHECK(rep.verdict == Verdict::Valid);
        CHECK(rep.residual_inf.is_zero());
        for (const auto& s : rep.atom_slack) CHECK(s >= Rational(0));
        for (bool in : rep.atom_inside) CHECK(in);
    }
}

TEST_CASE("measure: perturbing any generic-case weight flips the verdict") {
    MomentVector ta = target_a();
    for (const auto* w : {&builtin::witness_a1_opt(), &builtin::witness_a2max_opt(), &builtin::witness_a2min_opt()}) {
        for (size_t k = 0; k < w->weights.size(); ++k) {
            auto bad = w->weights;
            bad[k] += Rational(1, 1000);
            auto rep = verify_measure(w->atoms, bad, w->region, ta);
            CHECK(rep.verdict == Verdict::Invalid);
        }
    }
}

TEST_CASE("measure: weights solved when absent (generic case)") {
    const auto& w = builtin::witness_a1_opt();
    auto rep = verify_measure(w.atoms, std::nullopt, w.region, target_a());
    CHECK(rep.verdict == Verdict::Valid);
    CHECK_FALSE(rep.weights_given);
    CHECK(rep.residual_inf.is_zero());
    // the three atoms pin the weights uniquely
    for (size_t i = 0; i < w.weights.size(); ++i) CHECK(rep.weights[i] == w.weights[i]);
}

TEST_CASE("measure: split-case witness sets verify within 1e-9") {
    MomentVector tb = target_b();
    auto rep1 = verify_measure(builtin::points_a1(), std::nullopt,
                               Region::sum_geq(builtin::bound_a1_witness()), tb);
    CHECK(rep1.verdict == Verdict::Valid);
    CHECK(rep1.residual_inf.to_double() < 1e-9);
    for (const auto& s : rep1.atom_slack) CHECK(s >= Rational(0));

    auto rep2 = verify_measure(builtin::points_a2(), std::nullopt,
                               Region::product_geq(builtin::bound_a2_witness()), tb);
    CHECK(rep2.verdict == Verdict::Valid);
    CHECK(rep2.residual_inf.to_double() < 1e-9);
    for (const auto& s : rep2.atom_slack) CHECK(s >= Rational(0));
}

TEST_CASE("measure: atoms outside the region are flagged") {
    MomentVector tb = target_b();
    auto rep = verify_measure(builtin::points_a1(), std::nullopt,
                              Region::sum_geq(Rational(-2)), tb);  // tighter than the witness bound
    CHECK(rep.verdict == Verdict::Invalid);
    CHECK(rep.note == "atom outside the region");
    bool some_out = false;
    for (bool in : rep.atom_inside) some_out = some_out || !in;
    CHECK(some_out);
}

TEST_CASE("measure: infeasible atom set returns farkas evidence") {
    // two atoms both with positive sum cannot average to zero in every moment
    std::vector<std::pair<Rational, Rational>> atoms = {{Rational(2), Rational(2)},
                                                        {Rational(1), Rational(1)}};
    auto rep = verify_measure(atoms, std::nullopt, Region::full_box(), target_b());
    CHECK(rep.verdict == Verdict::Invalid);
    CHECK(rep.farkas.has_value());
}

TEST_CASE("measure validates region weakening") {
    // valid at a bound stays valid at every weaker bound
    const auto& w = builtin::witness_a1_opt();
    for (long num : {-1, -2, -3}) {
        auto rep = verify_measure(w.atoms, w.weights, Region::sum_geq(Rational(num)), target_a());
        CHECK(rep.verdict == Verdict::Valid);
    }
}

TEST_CASE("identity suite") {
    auto rep = verify_identity_suite();
    CHECK(rep.all_pass);
    CHECK(rep.items.size() == 9);
    for (const auto& item : rep.items) {
        CAPTURE(item.name);
        CHECK(item.pass);
        CHECK(item.mismatch.empty());
    }
}

TEST_CASE("identity negative control: a mutated coefficient is located") {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    Poly2 st = x * y;
    // constant 8 -> 9 in the upper-bound expansion
    std::vector<Poly2> fac = {st.scale(3) + Poly2::constant(2), st + Poly2::constant(4)};
    Poly2 rhs = (st * st).scale(3) + st.scale(14) + Poly2::constant(9);
    auto item = check_named_identity("mutated", fac, rhs);
    CHECK_FALSE(item.pass);
    CHECK(item.mismatch.find("1") != std::string::npos);  // off by -1 at the constant
}
