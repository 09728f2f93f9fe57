#include "tracehull/region.hpp"

#include <algorithm>
#include <set>

#include "tracehull/errors.hpp"

namespace tracehull {

Region Region::full_box() {
    return Region{};
}

Region Region::with(ConstraintForm form, ConstraintDir dir, const Rational& bound) {
    Region r;
    r.constraint = Constraint{form, dir, bound};
    return r;
}

Region Region::sum_geq(const Rational& u) { return with(ConstraintForm::Sum, ConstraintDir::Geq, u); }
Region Region::sum_leq(const Rational& u) { return with(ConstraintForm::Sum, ConstraintDir::Leq, u); }
Region Region::product_geq(const Rational& v) { return with(ConstraintForm::Product, ConstraintDir::Geq, v); }
Region Region::product_leq(const Rational& v) { return with(ConstraintForm::Product, ConstraintDir::Leq, v); }

bool Region::contains(const Rational& x, const Rational& y) const {
    if (x < lo || x > hi || y < lo || y > hi) return false;
    if (!constraint) return true;
    return constraint_slack(x, y) >= Rational(0);
}

Rational Region::constraint_slack(const Rational& x, const Rational& y) const {
    if (!constraint) throw input_error("region has no constraint");
    Rational value = constraint->form == ConstraintForm::Sum ? x + y : x * y;
    return constraint->dir == ConstraintDir::Geq ? value - constraint->bound : constraint->bound - value;
}

bool Region::contains(double x, double y, double tol) const {
    double l = lo.to_double(), h = hi.to_double();
    if (x < l - tol || x > h + tol || y < l - tol || y > h + tol) return false;
    if (!constraint) return true;
    double value = constraint->form == ConstraintForm::Sum ? x + y : x * y;
    double b = constraint->bound.to_double();
    return constraint->dir == ConstraintDir::Geq ? value >= b - tol : value <= b + tol;
}

bool Region::contains(const BigReal& x, const BigReal& y, const BigReal& tol) const {
    int d = std::max(x.precision_digits(), y.precision_digits());
    auto cv = [&](const Rational& q) { return BigReal::from_rational(q, d); };
    if (x < cv(lo) - tol || x > cv(hi) + tol) return false;
    if (y < cv(lo) - tol || y > cv(hi) + tol) return false;
    if (!constraint) return true;
    BigReal value = constraint->form == ConstraintForm::Sum ? x + y : x * y;
    BigReal b = cv(constraint->bound);
    return constraint->dir == ConstraintDir::Geq ? value >= b - tol : value <= b + tol;
}

bool Region::is_empty() const {
    if (lo >= hi) return true;
    if (!constraint) return false;
    const Rational& b = constraint->bound;
    // Extremes of x+y and x*y over the box.
    Rational sum_min = lo + lo, sum_max = hi + hi;
    Rational corner1 = lo * lo, corner2 = lo * hi, corner3 = hi * hi;
    Rational prod_min = std::min({corner1, corner2, corner3});
    Rational prod_max = std::max({corner1, corner3});  // lo*hi can't be the max of xy on a box
    if (constraint->form == ConstraintForm::Sum)
        return constraint->dir == ConstraintDir::Geq ? b > sum_max : b < sum_min;
    return constraint->dir == ConstraintDir::Geq ? b > prod_max : b < prod_min;
}

std::vector<std::pair<Rational, Rational>> Region::grid(int n) const {
    if (n < 2) throw input_error("grid needs n >= 2");
    if (is_empty()) throw input_error("grid of empty region");
    std::set<std::pair<Rational, Rational>> pts;
    Rational step = (hi - lo) / Rational(n - 1);
    std::vector<Rational> lattice;
    lattice.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) lattice.push_back(i + 1 == n ? hi : lo + Rational(i) * step);

    auto push = [&](const Rational& x, const Rational& y) {
        if (contains(x, y)) pts.emplace(x, y);
    };

    for (const Rational& x : lattice)
        for (const Rational& y : lattice) push(x, y);
    // Corners are lattice points already; keep them explicit anyway.
    push(lo, lo);
    push(lo, hi);
    push(hi, lo);
    push(hi, hi);

    if (constraint) {
        const Rational& b = constraint->bound;
        if (constraint->form == ConstraintForm::Sum) {
            // Segment x+y = b clipped to the box.
            Rational xa = std::max(lo, b - hi), xb = std::min(hi, b - lo);
            if (xa <= xb) {
                push(xa, b - xa);
                push(xb, b - xb);
                for (const Rational& x : lattice)
                    if (x >= xa && x <= xb) push(x, b - x);
                for (const Rational& y : lattice) {
                    Rational x = b - y;
                    if (x >= xa && x <= xb) push(x, y);
                }
            }
        } else if (b.is_zero()) {
            // Degenerate hyperbola: the coordinate axes.
            for (const Rational& t : lattice) {
                push(t, Rational(0));
                push(Rational(0), t);
            }
        } else {
            // x*y = b, one branch per sign of x.
            auto on_curve = [&](const Rational& x) {
                if (x.is_zero()) return;
                Rational y = b / x;
                if (y >= lo && y <= hi) push(x, y);
            };
            for (const Rational& t : lattice) {
                on_curve(t);
                if (!t.is_zero()) on_curve(b / t);  // lattice line in y projected to the curve
            }
            // Clip endpoints where the curve crosses box edges.
            for (const Rational& edge : {lo, hi}) {
                if (!edge.is_zero()) {
                    on_curve(b / edge);  // y = edge
                    on_curve(edge);      // x = edge
                }
            }
        }
    }
    return {pts.begin(), pts.end()};
}

Region Region::mirrored() const {
    Region out = *this;
    if (constraint && constraint->form == ConstraintForm::Sum) {
        out.constraint->bound = -constraint->bound;
        out.constraint->dir = constraint->dir == ConstraintDir::Geq ? ConstraintDir::Leq : ConstraintDir::Geq;
    }
    return out;
}

std::string Region::describe() const {
    std::string box = "[" + lo.to_fraction_string() + "," + hi.to_fraction_string() + "]^2";
    if (!constraint) return box;
    std::string lhs = constraint->form == ConstraintForm::Sum ? "x+y" : "x*y";
    std::string op = constraint->dir == ConstraintDir::Geq ? " >= " : " <= ";
    std::string b = constraint->bound.has_terminating_decimal() ? constraint->bound.to_exact_decimal_string()
                                                                : constraint->bound.to_fraction_string();
    return lhs + op + b + " on " + box;
}

bool SymmetricAtom::realizable(const Rational& lo, const Rational& hi) const {
    if (-lo != hi) throw input_error("symmetric atoms assume a symmetric box");
    Rational disc = e1 * e1 - Rational(4) * e2;
    if (disc < Rational(0)) return false;
    // p(t) = t^2 - e1 t + e2 must be nonnegative at both box ends, and the
    // vertex must sit inside the box (|e1| <= 2*hi); together these put both
    // roots in [lo, hi].
    if (hi * hi - e1 * hi + e2 < Rational(0)) return false;
    if (hi * hi + e1 * hi + e2 < Rational(0)) return false;
    if (e1.abs() > Rational(2) * hi) return false;
    return true;
}

std::pair<BigReal, BigReal> SymmetricAtom::roots(int digits) const {
    BigReal half = BigReal::from_rational(Rational(1, 2), digits);
    BigReal e1r = BigReal::from_rational(e1, digits);
    BigReal disc = BigReal::from_rational(e1 * e1 - Rational(4) * e2, digits);
    if (disc.sgn() < 0) throw input_error("atom has no real coordinates");
    BigReal root = disc.sqrt();
    return {(e1r - root) * half, (e1r + root) * half};
}

bool symmetric_atom_in_region(const SymmetricAtom& a, const Region& r) {
    if (!a.realizable(r.lo, r.hi)) throw input_error("unrealizable symmetric atom");
    if (!r.constraint) return true;
    const Rational& value = r.constraint->form == ConstraintForm::Sum ? a.e1 : a.e2;
    return r.constraint->dir == ConstraintDir::Geq ? value >= r.constraint->bound
                                                   : value <= r.constraint->bound;
}

}  // namespace tracehull
