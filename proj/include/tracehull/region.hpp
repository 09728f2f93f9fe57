#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracehull/bigreal.hpp"
#include "tracehull/rational.hpp"

namespace tracehull {

enum class ConstraintForm { Sum, Product };
enum class ConstraintDir { Geq, Leq };

struct Constraint {
    ConstraintForm form;
    ConstraintDir dir;
    Rational bound;
};

// The box [lo, hi]^2 (default [-2, 2]^2) optionally cut by one constraint on
// x+y or x*y. Membership is exact on rational points.
struct Region {
    Rational lo = Rational(-2);
    Rational hi = Rational(2);
    std::optional<Constraint> constraint;

    static Region full_box();
    static Region sum_geq(const Rational& u);
    static Region sum_leq(const Rational& u);
    static Region product_geq(const Rational& v);
    static Region product_leq(const Rational& v);
    static Region with(ConstraintForm form, ConstraintDir dir, const Rational& bound);

    bool contains(const Rational& x, const Rational& y) const;  // tol = 0
    bool contains(double x, double y, double tol) const;
    bool contains(const BigReal& x, const BigReal& y, const BigReal& tol) const;

    // Signed slack of the constraint at (x, y): how far inside the half set
    // the point sits (nonnegative means satisfied). Box not included.
    Rational constraint_slack(const Rational& x, const Rational& y) const;

    bool is_empty() const;

    // n x n lattice points inside the region, plus the projections of the
    // lattice lines onto the constraint boundary and the boundary's box
    // clip endpoints. Deduplicated; every returned point is inside exactly.
    std::vector<std::pair<Rational, Rational>> grid(int n) const;

    // Image under (x, y) -> (-x, -y). Sum bounds flip direction and sign;
    // product bounds are unchanged.
    Region mirrored() const;

    std::string describe() const;  // e.g. "x+y >= -2.47 on [-2,2]^2"
};

// Unordered pair of box coordinates with rational elementary symmetric
// values e1 = x+y, e2 = x*y (the two coordinates themselves may be
// conjugate surds).
struct SymmetricAtom {
    Rational e1;
    Rational e2;

    // True iff some real pair (x, y) in [lo, hi]^2 has these symmetric values:
    // e1^2 - 4 e2 >= 0, (hi^2 - e1*hi + e2) >= 0, (hi^2 + e1*hi + e2) >= 0 and
    // |e1| <= 2*hi (for the symmetric box [-hi, hi]^2).
    bool realizable(const Rational& lo = Rational(-2), const Rational& hi = Rational(2)) const;

    // The two real coordinates, at the given precision.
    std::pair<BigReal, BigReal> roots(int digits) const;
};

// Exact test: Sum constraints check e1, Product constraints check e2; the box
// is implied by realizability. Throws input_error for unrealizable atoms.
bool symmetric_atom_in_region(const SymmetricAtom& a, const Region& r);

}  // namespace tracehull
