#include "tracehull/certify.hpp"

#include <algorithm>

#include "tracehull/errors.hpp"

namespace tracehull {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::ValidCoarse: return "valid-coarse";
        case Verdict::Invalid: return "invalid";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

HyperplaneReport verify_hyperplane(const Poly2& p, const Region& r, const MomentVector& m,
                                   const HyperplaneOptions& opts) {
    HyperplaneReport rep;
    rep.expectation = expectation(p, m);  // throws unknown_moment_error when out of span
    MinOptions mo;
    mo.grid_n = opts.grid_n;
    mo.digits = opts.digits;
    rep.min_result = global_min(p, r, mo);
    rep.bound = lower_bound(p, r, opts.lb_gap, opts.lb_budget);
    BigReal expect = BigReal::from_rational(rep.expectation, opts.digits);
    rep.margin = rep.min_result.value - expect;

    BigReal gap = BigReal::from_double(rep.bound.achieved_gap, opts.digits);
    if (rep.bound.bound > expect) {
        rep.verdict = Verdict::Valid;
    } else if (rep.min_result.value > expect && rep.bound.bound > expect - gap) {
        rep.verdict = Verdict::ValidCoarse;
    } else if (rep.min_result.value <= expect) {
        rep.verdict = Verdict::Invalid;
    } else {
        rep.verdict = Verdict::Indeterminate;
    }

    if (rep.verdict == Verdict::Valid || rep.verdict == Verdict::ValidCoarse) {
        std::string c = r.constraint ? r.describe() : std::string("the box");
        rep.conclusion = "positive proportion of primes violate " + c;
    } else if (rep.verdict == Verdict::Invalid) {
        rep.conclusion = "no violation provable: the minimum does not clear the average";
    } else {
        rep.conclusion = "inconclusive at the requested gap";
    }
    return rep;
}

namespace {

Rational slack_or_zero(const Region& r, const Rational& value_sum, const Rational& value_prod) {
    if (!r.constraint) return Rational(0);
    const Rational& v = r.constraint->form == ConstraintForm::Sum ? value_sum : value_prod;
    return r.constraint->dir == ConstraintDir::Geq ? v - r.constraint->bound : r.constraint->bound - v;
}

// double -> exact rational tolerance via a short decimal (tolerances are
// user-supplied round numbers)
Rational tol_to_rational(double tol) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15f", tol);
    return Rational::parse_decimal(buf);
}

}  // namespace

MeasureReport<BigReal> verify_measure(const std::vector<std::pair<Rational, Rational>>& atoms,
                                      const std::optional<std::vector<Rational>>& weights,
                                      const Region& r, const MomentVector& m, double tol, int digits) {
    if (atoms.empty()) throw input_error("measure needs at least one atom");
    if (m.basis != BasisId::B32) throw input_error("coordinate atoms verify against the 32-moment target");
    MeasureReport<BigReal> rep;
    rep.residual_inf = BigReal(digits);
    rep.weights_given = weights.has_value();
    bool all_inside = true;
    for (const auto& [x, y] : atoms) {
        bool in = r.contains(x, y);
        rep.atom_inside.push_back(in);
        rep.atom_slack.push_back(slack_or_zero(r, x + y, x * y));
        all_inside = all_inside && in;
    }

    BigReal btol = BigReal::from_double(tol, digits);

    if (weights) {
        if (weights->size() != atoms.size()) throw input_error("weights/atoms length mismatch");
        // exact path: rational weights against exact features
        Rational total(0);
        bool nonneg = true;
        for (const auto& w : *weights) {
            nonneg = nonneg && w >= Rational(0);
            total += w;
        }
        std::vector<Rational> acc(m.values.size(), Rational(0));
        for (size_t j = 0; j < atoms.size(); ++j) {
            auto f = featurize(atoms[j].first, atoms[j].second, MomentBasis::b32());
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += (*weights)[j] * f[i];
        }
        Rational worst(0);
        for (size_t i = 0; i < acc.size(); ++i) {
            Rational d = acc[i] - m.values[i];
            rep.residual.push_back(BigReal::from_rational(d, digits));
            worst = std::max(worst, d.abs());
        }
        worst = std::max(worst, (total - Rational(1)).abs());
        rep.residual_inf = BigReal::from_rational(worst, digits);
        for (const auto& w : *weights) rep.weights.push_back(BigReal::from_rational(w, digits));
        bool ok = all_inside && nonneg && worst <= tol_to_rational(tol);
        rep.verdict = ok ? Verdict::Valid : Verdict::Invalid;
        if (!all_inside) rep.note = "atom outside the region";
        else if (!nonneg) rep.note = "negative weight";
        else if (!ok) rep.note = "moment residual above tolerance";
        return rep;
    }

    // solve for weights over the given atoms
    std::vector<std::vector<BigReal>> cols;
    cols.reserve(atoms.size());
    for (const auto& [x, y] : atoms)
        cols.push_back(featurize(BigReal::from_rational(x, digits), BigReal::from_rational(y, digits),
                                 MomentBasis::b32()));
    std::vector<BigReal> target;
    target.reserve(m.values.size());
    for (const auto& v : m.values) target.push_back(BigReal::from_rational(v, digits));
    auto out = solve_feasibility(cols, target, btol);
    if (!out.feasible) {
        rep.verdict = Verdict::Invalid;
        rep.farkas = out.farkas;
        rep.note = "no convex combination of the atoms matches the target";
        return rep;
    }
    rep.weights = out.weights;
    std::vector<BigReal> acc(target.size(), BigReal(digits));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + out.weights[j] * cols[j][i];
    BigReal worst(digits);
    for (size_t i = 0; i < acc.size(); ++i) {
        rep.residual.push_back(acc[i] - target[i]);
        if (rep.residual.back().abs() > worst) worst = rep.residual.back().abs();
    }
    rep.residual_inf = worst;
    rep.verdict = (all_inside && worst <= btol) ? Verdict::Valid : Verdict::Invalid;
    if (!all_inside) rep.note = "atom outside the region";
    return rep;
}

MeasureReport<Rational> verify_measure(const std::vector<SymmetricAtom>& atoms,
                                       const std::optional<std::vector<Rational>>& weights,
                                       const Region& r, const MomentVector& m) {
    if (atoms.empty()) throw input_error("measure needs at least one atom");
    if (m.basis != BasisId::A5) throw input_error("symmetric atoms verify against the five-feature target");
    MeasureReport<Rational> rep;
    rep.residual_inf = Rational(0);
    rep.weights_given = weights.has_value();
    bool all_inside = true;
    for (const auto& a : atoms) {
        bool in = symmetric_atom_in_region(a, r);  // throws on unrealizable atoms
        rep.atom_inside.push_back(in);
        rep.atom_slack.push_back(slack_or_zero(r, a.e1, a.e2));
        all_inside = all_inside && in;
    }

    std::vector<std::vector<Rational>> cols;
    cols.reserve(atoms.size());
    for (const auto& a : atoms) cols.push_back(featurize_sym(a.e1, a.e2));

    std::vector<Rational> w;
    if (weights) {
        if (weights->size() != atoms.size()) throw input_error("weights/atoms length mismatch");
        w = *weights;
    } else {
        auto out = solve_feasibility(cols, m.values, Rational(0));
        if (!out.feasible) {
            rep.verdict = Verdict::Invalid;
            rep.farkas = out.farkas;
            rep.note = "no convex combination of the atoms matches the target";
            return rep;
        }
        w = out.weights;
    }

    Rational total(0);
    bool nonneg = true;
    for (const auto& wi : w) {
        nonneg = nonneg && wi >= Rational(0);
        total += wi;
    }
    std::vector<Rational> acc(m.values.size(), Rational(0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += w[j] * cols[j][i];
    Rational worst(0);
    for (size_t i = 0; i < acc.size(); ++i) {
        rep.residual.push_back(acc[i] - m.values[i]);
        worst = std::max(worst, rep.residual.back().abs());
    }
    rep.residual_inf = worst;
    rep.weights = std::move(w);
    bool ok = all_inside && nonneg && worst.is_zero() && total == Rational(1);
    rep.verdict = ok ? Verdict::Valid : Verdict::Invalid;
    if (!all_inside) rep.note = "atom outside the region";
    else if (!nonneg) rep.note = "negative weight";
    else if (!ok) rep.note = "nonzero moment residual";
    return rep;
}

IdentityReport::Item check_named_identity(const std::string& name, const std::vector<Poly2>& factors,
                                          const Poly2& rhs) {
    IdentityReport::Item item;
    item.name = name;
    Poly2 defect = Poly2::identity_defect(factors, rhs);
    item.pass = defect.is_zero();
    if (!item.pass) {
        const auto& [mono, coeff] = *defect.terms().begin();
        item.mismatch = "coefficient of " + mono.to_string() + " off by " + coeff.to_fraction_string();
    }
    return item;
}

IdentityReport verify_identity_suite() {
    IdentityReport rep;
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    Poly2 one = Poly2::constant(1);
    Poly2 s_plus_t = x + y, st = x * y;

    for (long e = 0; e <= 1; ++e) {
        Rational eps(e);
        std::string tag = " (eps=" + std::to_string(e) + ")";
        // both sides are linear in the parameter, so its two end values prove
        // the identity for every value
        {
            std::vector<Poly2> fac = {Poly2::constant(2) - x, Poly2::constant(2) - y,
                                      s_plus_t.scale(3) + Poly2::constant(Rational(2) - eps)};
            Poly2 rhs = Poly2::constant(Rational(8) - Rational(4) * eps) +
                        s_plus_t.scale(Rational(8) + Rational(2) * eps) -
                        (x * x + y * y).scale(6) - st.scale(Rational(10) + eps) +
                        (x * x * y + x * y * y).scale(3);
            rep.items.push_back(check_named_identity("a1-certificate-expansion" + tag, fac, rhs));
        }
        {
            std::vector<Poly2> fac = {st.scale(3) + Poly2::constant(Rational(2) + eps),
                                      st + Poly2::constant(4)};
            Poly2 rhs = (st * st).scale(3) + st.scale(Rational(14) + eps) +
                        Poly2::constant(Rational(8) + Rational(4) * eps);
            rep.items.push_back(check_named_identity("a2-upper-certificate-expansion" + tag, fac, rhs));
        }
        {
            std::vector<Poly2> fac = {st.scale(5) + Poly2::constant(Rational(6) - eps),
                                      Poly2::constant(4) - st};
            Poly2 rhs = (st * st).scale(-5) + st.scale(Rational(14) + eps) +
                        Poly2::constant(Rational(24) - Rational(4) * eps);
            rep.items.push_back(check_named_identity("a2-lower-certificate-expansion" + tag, fac, rhs));
        }
    }

    // reductions that turn trace-square averages into monomial averages
    {
        Poly2 lhs = s_plus_t * s_plus_t - one - (st + one).scale(2);
        Poly2 rhs = x * x + y * y - Poly2::constant(3);
        rep.items.push_back(check_named_identity("reduction-square-of-sum", {lhs}, rhs));
    }
    {
        Poly2 lhs = s_plus_t * (st + one) - s_plus_t;
        Poly2 rhs = x * x * y + x * y * y;
        rep.items.push_back(check_named_identity("reduction-cross-product", {lhs}, rhs));
    }
    {
        Poly2 lhs = (st + one) * (st + one) - one - (st + one).scale(2);
        Poly2 rhs = x * x * y * y - Poly2::constant(2);
        rep.items.push_back(check_named_identity("reduction-square-of-product", {lhs}, rhs));
    }

    rep.all_pass = std::all_of(rep.items.begin(), rep.items.end(),
                               [](const IdentityReport::Item& i) { return i.pass; });
    return rep;
}

}  // namespace tracehull
