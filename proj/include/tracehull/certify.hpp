#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracehull/lp.hpp"
#include "tracehull/moments.hpp"
#include "tracehull/optimize.hpp"
#include "tracehull/region.hpp"

namespace tracehull {

enum class Verdict { Valid, ValidCoarse, Invalid, Indeterminate };
std::string verdict_name(Verdict v);

struct HyperplaneOptions {
    int digits = 60;
    int grid_n = 257;
    double lb_gap = 0.01;
    long lb_budget = 2000000;
};

// Verification of a separating-hyperplane certificate: the polynomial's exact
// limiting average sits strictly below its minimum over the region, so the
// region cannot carry the whole distribution.
struct HyperplaneReport {
    Rational expectation;   // exact
    MinResult min_result;   // polished minimum estimate
    BoundResult bound;      // certified lower bound with its achieved gap
    BigReal margin;         // min estimate - expectation
    Verdict verdict = Verdict::Indeterminate;
    std::string conclusion;
};

// verdict rules:
//   valid        certified bound > expectation
//   valid-coarse minimum estimate > expectation and the certified bound is
//                within its achieved gap of clearing it
//   invalid      minimum estimate <= expectation (a feasible point refutes)
HyperplaneReport verify_hyperplane(const Poly2& p, const Region& r, const MomentVector& m,
                                   const HyperplaneOptions& opts = {});

template <typename S>
struct MeasureReport {
    Verdict verdict = Verdict::Invalid;
    bool weights_given = false;
    std::vector<bool> atom_inside;
    std::vector<Rational> atom_slack;  // exact constraint slack per atom
    std::vector<S> weights;
    std::vector<S> residual;  // per-feature moment residual
    S residual_inf;
    std::optional<Farkas<S>> farkas;  // when no weights exist
    std::string note;
};

// Split-case witness verification: atoms are exact coordinate pairs, the
// target is the 32-moment vector. Weights may be supplied or solved here.
MeasureReport<BigReal> verify_measure(const std::vector<std::pair<Rational, Rational>>& atoms,
                                      const std::optional<std::vector<Rational>>& weights,
                                      const Region& r, const MomentVector& m, double tol = 1e-9,
                                      int digits = 60);

// Generic-case witness verification in symmetric coordinates, fully exact
// (zero tolerance): surd atom pairs are handled through their rational
// elementary symmetric values.
MeasureReport<Rational> verify_measure(const std::vector<SymmetricAtom>& atoms,
                                       const std::optional<std::vector<Rational>>& weights,
                                       const Region& r, const MomentVector& m);

struct IdentityReport {
    struct Item {
        std::string name;
        bool pass = false;
        std::string mismatch;  // first offending monomial when failing
    };
    std::vector<Item> items;
    bool all_pass = false;
};

// The packaged proof identities, checked exactly over rationals: the three
// factored product identities (at both ends of their linear parameter) and
// the three reductions that turn trace-square averages into monomial ones.
IdentityReport verify_identity_suite();

// Single identity check used by the suite and its negative-control tests.
IdentityReport::Item check_named_identity(const std::string& name, const std::vector<Poly2>& factors,
                                          const Poly2& rhs);

}  // namespace tracehull
