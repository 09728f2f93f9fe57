#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracehull/poly.hpp"
#include "tracehull/region.hpp"

namespace tracehull::builtin {

// Packaged certificate polynomials. q/r prove the rounded bounds, p1/p2 the
// 13-digit optimal ones. All are symmetric in x and y with exact decimal
// coefficients.
const Poly2& poly_q();
const Poly2& poly_r();
const Poly2& poly_p1();
const Poly2& poly_p2();

// The two 33-point optimality witness sets (split case): coordinates exact.
const std::vector<std::pair<Rational, Rational>>& points_a1();
const std::vector<std::pair<Rational, Rational>>& points_a2();

// Generic-case optimality witnesses: symmetric atoms with exact weights and
// the region whose bound they saturate.
struct CaseAWitness {
    std::vector<SymmetricAtom> atoms;
    std::vector<Rational> weights;
    Region region;
};
const CaseAWitness& witness_a1_opt();
const CaseAWitness& witness_a2max_opt();
const CaseAWitness& witness_a2min_opt();

// Named region bounds. The rounded bounds of the two coarse certificates are
// kept distinct from the 13-digit optimal thresholds.
Rational bound_q();            // sum >= -2.47
Rational bound_r();            // product >= -1.57
Rational bound_p1();           // sum >= -2.4763827913319   (separator side)
Rational bound_a1_witness();   // sum >= -2.4763827913320   (witness side)
Rational bound_p2();           // product >= -1.578548220646049
Rational bound_a2_witness();   // product >= -1.5785482206460513

// CLI lookups; names: q, r, p1, p2 / appendix-a1, appendix-a2 /
// a1-opt, a2max-opt, a2min-opt.
std::optional<Poly2> find_poly(const std::string& name);
const std::vector<std::pair<Rational, Rational>>* find_points(const std::string& name);
const CaseAWitness* find_case_a_witness(const std::string& name);
std::optional<Region> find_region(const std::string& name);

// FNV-1a over a canonical serialization; used by the packaged-data
// integrity tests.
std::uint64_t fnv1a64(const std::string& payload);
std::uint64_t checksum_poly(const Poly2& p);
std::uint64_t checksum_points(const std::vector<std::pair<Rational, Rational>>& pts);

}  // namespace tracehull::builtin
