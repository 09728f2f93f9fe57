#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tracehull/errors.hpp"
#include "tracehull/poly.hpp"

namespace tracehull {

// Raised when a polynomial involves a monomial whose limiting average is not
// pinned down by any known constraint.
struct unknown_moment_error : input_error {
    explicit unknown_moment_error(const Monomial& mono)
        : input_error("unknown moment for monomial " + mono.to_string()), monomial(mono) {}
    Monomial monomial;
};

enum class BasisId { A5, B32 };

// Ordered feature basis. A5 is the five symmetric features
// (x+y, xy, x^2+y^2, x^2 y + x y^2, x^2 y^2); B32 is the fixed list of 32
// monomials with known averages, ordered by total degree then descending
// x-exponent.
struct MomentBasis {
    BasisId id;
    std::vector<Poly2> features;

    static const MomentBasis& a5();
    static const MomentBasis& b32();
    size_t size() const { return features.size(); }
};

struct MomentVector {
    BasisId basis;
    std::vector<Rational> values;

    const MomentBasis& basis_ref() const;
};

// n-th Catalan number, exact.
Rational catalan(int n);

// Limiting average of x^k y^l for the split case: C_{k/2} C_{l/2} when both
// exponents are even, 0 when either is odd.
Rational haar_moment_b(int k, int l);

// The 32 monomials with known averages: {1<=k,l<=... : k,l <= 4} plus the
// pure powers up to 8, constant excluded, in the canonical order.
const std::vector<Monomial>& known_monomials_b();

MomentVector target_b();
MomentVector target_a();

// One known L-function: the trace polynomial it averages and the order of
// its pole at s = 1 (which equals the limiting average by the Tauberian
// translation).
struct PoleConstraint {
    Poly2 trace_poly;
    int pole_order = 0;
};

// Solves E[trace_poly] = pole_order for the five A5 feature averages.
// Each trace polynomial must lie in span(A5 + constants); the system must
// determine all five values. Throws input_error otherwise.
MomentVector constraints_from_poles(const std::vector<PoleConstraint>& spec);

// The standard five-constraint specification (traces of the two 2-dim
// factors, their squares and product, with pole orders 0,0,1,0,1).
std::vector<PoleConstraint> standard_pole_spec_a();

// Exact limiting average of p under m. p must lie in the span of the basis
// features plus constants; otherwise throws unknown_moment_error.
Rational expectation(const Poly2& p, const MomentVector& m);

// Decompose p = c0 + sum_i c_i * feature_i over the given basis.
// Returns (c0, coefficients); throws if p is outside the span.
std::pair<Rational, std::vector<Rational>> decompose_over_basis(const Poly2& p, const MomentBasis& basis);

std::vector<Rational> featurize(const Rational& x, const Rational& y, const MomentBasis& basis);
std::vector<BigReal> featurize(const BigReal& x, const BigReal& y, const MomentBasis& basis);

// A5 features rewritten in the symmetric coordinates (e1, e2) = (x+y, xy):
// (e1, e2, e1^2 - 2 e2, e1 e2, e2^2). Used for exact handling of conjugate
// atom pairs.
const std::vector<Poly2>& a5_features_sym();
std::vector<Rational> featurize_sym(const Rational& e1, const Rational& e2);

// First and second coefficients of the degree-4 unitary characteristic
// polynomial attached to factor traces (x, y): a1 = x+y, a2 = xy+2.
std::pair<Rational, Rational> a1_a2(const Rational& x, const Rational& y);

// Accept-reject sampler for the semicircle trace density sqrt(4-x^2)/(2 pi)
// on [-2, 2]. Owns its generator; not shareable while in use.
class SemicircleSampler {
  public:
    explicit SemicircleSampler(std::uint64_t seed) : rng_(seed) {}
    double next();

  private:
    std::mt19937_64 rng_;
};

}  // namespace tracehull
