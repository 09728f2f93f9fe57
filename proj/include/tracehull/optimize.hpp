#pragma once

#include <string>
#include <vector>

#include "tracehull/bigreal.hpp"
#include "tracehull/poly.hpp"
#include "tracehull/region.hpp"

namespace tracehull {

struct MinOptions {
    int grid_n = 257;
    int digits = 60;
    // Residual threshold for the converged flag; <= 0 picks
    // 10^(10-digits) * (coefficient scale).
    double tol_kkt = 0;
};

struct MinResult {
    BigReal x, y;
    BigReal value;
    BigReal kkt_residual;  // reduced-gradient norm on the active stratum
    std::vector<std::string> active_set;  // subset of {x=lo,x=hi,y=lo,y=hi,constraint-curve}
    bool converged = false;

    std::string active_set_string() const;
};

// Global minimum of p over r. Enumerates every stratum (interior, four box
// edges, the constraint curve, and all their pairwise corners), polishes the
// one-dimensional strata through exact derivative root isolation and the
// interior through damped Newton on the gradient, all in BigReal at the
// requested precision. Throws input_error on an empty region.
MinResult global_min(const Poly2& p, const Region& r, const MinOptions& opts = {});

struct CandidatePoint {
    BigReal x, y;
    BigReal value;
    std::vector<std::string> active;
};

// Every polished stratum candidate (endpoints, edge/curve critical points,
// interior stationary points), with values, sorted ascending. Feeds exchange
// loops that need all near-minimal points, not just the winner.
std::vector<CandidatePoint> stationary_candidates(const Poly2& p, const Region& r,
                                                  const MinOptions& opts = {});

struct BoundResult {
    BigReal bound;            // certified: min of p over r is >= bound
    double achieved_gap = 0;  // best feasible value found minus bound
    bool converged = false;   // achieved_gap <= requested gap
    long cells = 0;
};

// Certified lower bound by adaptive cell subdivision. Each cell is bounded
// below by its center value minus halfwidth-weighted coordinate gradient
// bounds (computed from exact coefficient sums on the cell's coordinate
// ranges), minus a floating-point error allowance. Stops once the bound is
// within `gap` of the best feasible value found or the cell budget runs out.
BoundResult lower_bound(const Poly2& p, const Region& r, double gap, long budget = 2000000);

namespace detail {

// Real roots of a univariate polynomial (coefficients by ascending power)
// inside [a, b], found by recursive derivative root isolation with
// safeguarded Newton refinement. Multiple roots are detected at the
// breakpoints. Exposed for tests.
std::vector<BigReal> poly_roots_interval(const std::vector<BigReal>& coeffs, const BigReal& a,
                                         const BigReal& b);

}  // namespace detail

}  // namespace tracehull
