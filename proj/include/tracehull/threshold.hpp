#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracehull/certify.hpp"
#include "tracehull/lp.hpp"
#include "tracehull/moments.hpp"
#include "tracehull/poly.hpp"
#include "tracehull/region.hpp"

namespace tracehull {

enum class CaseId { A, B };

struct FeasibilityOptions {
    double tol_lp = 1e-9;
    double tol_sep = 0;  // <= 0 picks tol_lp / 100
    int max_rounds = 200;
    int grid_n = 21;
    int digits = 60;
    int sep_grid_n = 257;  // separation minimizer grid
};

// A witness measure in serializable (exact rational) form. Case A carries
// symmetric atoms; case B carries coordinate pairs.
struct WitnessMeasure {
    CaseId case_id = CaseId::B;
    std::vector<SymmetricAtom> sym_atoms;
    std::vector<std::pair<Rational, Rational>> xy_atoms;
    std::vector<Rational> weights;
};

struct FeasibilityResult {
    enum class Kind { Feasible, Infeasible, Indeterminate } kind = Kind::Indeterminate;
    std::optional<WitnessMeasure> witness;  // Feasible
    std::optional<Poly2> separator;         // Infeasible, exact coefficients
    Rational separation;                    // -(average of separator), Infeasible
    int rounds = 0;
    int columns_used = 0;
    std::string diagnostics;
};

// Decides whether the case target lies in the hull of the featurized region
// by column generation: LP over a finite atom pool, then minimization of the
// returned separating functional over the region; minimizers join the pool
// until either the LP finds weights or the separator verifies globally.
// The pool pointer (optional) shares atoms across calls; atoms are stored as
// (e1, e2) pairs for case A and (x, y) pairs for case B.
FeasibilityResult feasible_at(CaseId c, const Region& r, const FeasibilityOptions& opts = {},
                              std::vector<std::pair<Rational, Rational>>* pool = nullptr);

struct ThresholdResult {
    Rational u_feasible;    // witness-side endpoint
    Rational u_infeasible;  // separator-side endpoint
    WitnessMeasure witness;
    Poly2 separator;
    int iterations = 0;
    double seconds = 0;
    // bisection trace: (bound, +1 feasible / -1 infeasible)
    std::vector<std::pair<Rational, int>> trace;
    // re-verification of the endpoint certificates through certify
    Verdict witness_verdict = Verdict::Indeterminate;
    Verdict separator_verdict = Verdict::Indeterminate;
};

// Optimal provable bound for the given constraint form by bisection over the
// region bound. Endpoint certificates are re-verified through certify with
// no access to solver state.
ThresholdResult threshold(CaseId c, ConstraintForm form, ConstraintDir dir, double tol,
                          const FeasibilityOptions& opts = {});

// Target/feature plumbing shared with the CLI.
const MomentVector& case_target(CaseId c);

}  // namespace tracehull
