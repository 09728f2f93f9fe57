#include "tracehull/threshold.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "tracehull/errors.hpp"
#include "tracehull/optimize.hpp"

namespace tracehull {

const MomentVector& case_target(CaseId c) {
    static const MomentVector ta = target_a();
    static const MomentVector tb = target_b();
    return c == CaseId::A ? ta : tb;
}

namespace {

constexpr int kAtomDigitsA = 20;  // decimal digits kept when rationalizing atoms
constexpr int kAtomDigitsB = 24;

using AtomPair = std::pair<Rational, Rational>;

bool atom_in_region(CaseId c, const Region& r, const AtomPair& a) {
    if (c == CaseId::B) return r.contains(a.first, a.second);
    SymmetricAtom s{a.first, a.second};
    return s.realizable(r.lo, r.hi) && symmetric_atom_in_region(s, r);
}

// Initial pool: lattice-plus-boundary points of the region; case A maps them
// to symmetric coordinates.
std::vector<AtomPair> seed_atoms(CaseId c, const Region& r, int grid_n) {
    std::set<AtomPair> s;
    for (const auto& [x, y] : r.grid(grid_n)) {
        if (c == CaseId::B) s.insert({x, y});
        else s.insert({x + y, x * y});
    }
    return {s.begin(), s.end()};
}

// Snap a polished minimizer to an exact rational atom on its active stratum.
// Returns nullopt when the snapped point fails the exact region test.
std::optional<AtomPair> snap_atom_b(const Region& r, const CandidatePoint& cp) {
    auto has = [&](const char* k) {
        return std::find(cp.active.begin(), cp.active.end(), k) != cp.active.end();
    };
    std::optional<Rational> x, y;
    if (has("x=lo")) x = r.lo;
    if (has("x=hi")) x = r.hi;
    if (has("y=lo")) y = r.lo;
    if (has("y=hi")) y = r.hi;
    bool on_curve = has("constraint-curve") && r.constraint.has_value();
    if (!x && !(on_curve && y)) x = cp.x.to_rational_decimal(kAtomDigitsB);
    if (on_curve) {
        const Rational& b = r.constraint->bound;
        if (r.constraint->form == ConstraintForm::Sum) {
            if (!x) x = b - *y;
            else y = b - *x;
        } else if (y && !x) {
            if (!y->is_zero()) x = b / *y;
        } else if (x && !x->is_zero()) {
            y = b / *x;
        }
    }
    if (!x) x = cp.x.to_rational_decimal(kAtomDigitsB);
    if (!y) y = cp.y.to_rational_decimal(kAtomDigitsB);
    // nudge the free coordinate across the constraint if rounding left it
    // marginally outside
    if (r.constraint && !r.contains(*x, *y)) {
        Rational eps = Rational(1) / Rational::pow10(kAtomDigitsB - 2);
        for (int dir : {1, -1}) {
            Rational cand = *y + Rational(dir) * eps;
            if (cand >= r.lo && cand <= r.hi && r.contains(*x, cand)) {
                y = cand;
                break;
            }
        }
    }
    if (!r.contains(*x, *y)) return std::nullopt;
    return AtomPair{*x, *y};
}

std::optional<AtomPair> snap_atom_a(const Region& r, const CandidatePoint& cp) {
    auto has = [&](const char* k) {
        return std::find(cp.active.begin(), cp.active.end(), k) != cp.active.end();
    };
    BigReal e1b = cp.x + cp.y, e2b = cp.x * cp.y;
    Rational e1, e2;
    bool fixed_coord = has("x=lo") || has("x=hi") || has("y=lo") || has("y=hi");
    if (fixed_coord) {
        // one coordinate at a box end: the atom lies on the line e2 = c*e1 - c^2
        Rational c = (has("x=lo") || has("y=lo")) ? r.lo : r.hi;
        BigReal free = (has("x=lo") || has("x=hi")) ? cp.y : cp.x;
        Rational w = free.to_rational_decimal(kAtomDigitsA);
        w = std::min(std::max(w, r.lo), r.hi);
        e1 = c + w;
        e2 = c * w;
    } else if (has("constraint-curve") && r.constraint) {
        if (r.constraint->form == ConstraintForm::Sum) {
            e1 = r.constraint->bound;
            e2 = e2b.to_rational_decimal(kAtomDigitsA);
        } else {
            e2 = r.constraint->bound;
            e1 = e1b.to_rational_decimal(kAtomDigitsA);
        }
    } else {
        e1 = e1b.to_rational_decimal(kAtomDigitsA);
        e2 = e2b.to_rational_decimal(kAtomDigitsA);
    }
    // realizability clamps: e2 at most e1^2/4 (real pair) and at least the two
    // box-corner lines
    Rational cap = e1 * e1 / Rational(4);
    Rational floor1 = Rational(2) * e1 - Rational(4);
    Rational floor2 = Rational(-2) * e1 - Rational(4);
    Rational flo = std::max(floor1, floor2);
    if (e1.abs() > Rational(4)) return std::nullopt;
    if (e2 > cap) e2 = cap;
    if (e2 < flo) e2 = flo;
    SymmetricAtom atom{e1, e2};
    if (!atom.realizable(r.lo, r.hi)) return std::nullopt;
    if (!symmetric_atom_in_region(atom, r)) return std::nullopt;
    return AtomPair{e1, e2};
}

Poly2 separator_poly_a(const Farkas<Rational>& f) {
    const auto& feats = MomentBasis::a5().features;
    Poly2 g = Poly2::constant(f.b);
    for (size_t i = 0; i < feats.size(); ++i) g = g + feats[i].scale(f.a[i]);
    return g;
}

Poly2 separator_poly_b(const Farkas<BigReal>& f) {
    const auto& monos = known_monomials_b();
    Poly2 g = Poly2::constant(f.b.to_rational_decimal(45));
    for (size_t i = 0; i < monos.size(); ++i) {
        Rational c = f.a[i].to_rational_decimal(45);
        if (!c.is_zero()) g.add_term(monos[i], c);
    }
    return g;
}

}  // namespace

FeasibilityResult feasible_at(CaseId c, const Region& r, const FeasibilityOptions& opts,
                              std::vector<AtomPair>* pool) {
    if (r.is_empty()) throw input_error("feasibility over empty region");
    const double tol_sep = opts.tol_sep > 0 ? opts.tol_sep : opts.tol_lp / 100;
    const int digits = opts.digits;
    const MomentVector& target = case_target(c);

    std::vector<AtomPair> local_pool;
    if (!pool) pool = &local_pool;
    std::set<AtomPair> pool_index(pool->begin(), pool->end());
    for (auto& a : seed_atoms(c, r, opts.grid_n))
        if (pool_index.insert(a).second) pool->push_back(a);

    // atoms admissible for this region
    std::vector<AtomPair> atoms;
    for (const auto& a : *pool)
        if (atom_in_region(c, r, a)) atoms.push_back(a);
    if (atoms.empty()) throw solver_error("no admissible seed atoms");

    FeasibilityResult res;
    MinOptions sep_opts;
    sep_opts.grid_n = opts.sep_grid_n;
    sep_opts.digits = digits;

    // one warm-started solver per case; columns accumulate across rounds
    std::optional<FeasibilitySolver<Rational>> solver_a;
    std::optional<FeasibilitySolver<BigReal>> solver_b;
    std::vector<BigReal> target_big;
    if (c == CaseId::A) {
        solver_a.emplace(target.values, Rational(0));
        for (const auto& a : atoms) solver_a->add_column(featurize_sym(a.first, a.second));
    } else {
        for (const auto& v : target.values) target_big.push_back(BigReal::from_rational(v, digits));
        solver_b.emplace(target_big, BigReal::from_double(opts.tol_lp, digits));
        for (const auto& a : atoms)
            solver_b->add_column(featurize(BigReal::from_rational(a.first, digits),
                                           BigReal::from_rational(a.second, digits), MomentBasis::b32()));
    }

    for (int round = 1; round <= opts.max_rounds; ++round) {
        res.rounds = round;
        res.columns_used = static_cast<int>(atoms.size());

        std::optional<Poly2> separator;
        bool farkas_ok = false;
        if (c == CaseId::A) {
            auto out = solver_a->solve();
            if (out.feasible) {
                WitnessMeasure w;
                w.case_id = CaseId::A;
                for (size_t j = 0; j < atoms.size(); ++j) {
                    if (out.weights[j].is_zero()) continue;
                    w.sym_atoms.push_back({atoms[j].first, atoms[j].second});
                    w.weights.push_back(out.weights[j]);
                }
                res.kind = FeasibilityResult::Kind::Feasible;
                res.witness = std::move(w);
                return res;
            }
            separator = separator_poly_a(*out.farkas);
            farkas_ok = out.farkas_strict;
        } else {
            auto out = solver_b->solve();
            if (out.feasible) {
                // round the solved weights to exact rationals; force the total
                // to exactly one through the largest weight
                WitnessMeasure w;
                w.case_id = CaseId::B;
                std::vector<Rational> wts;
                std::vector<size_t> idx;
                for (size_t j = 0; j < atoms.size(); ++j) {
                    if (out.weights[j].sgn() <= 0) continue;
                    Rational q = out.weights[j].to_rational_decimal(45);
                    if (q <= Rational(0)) continue;
                    idx.push_back(j);
                    wts.push_back(q);
                }
                Rational total(0);
                size_t largest = 0;
                for (size_t k = 0; k < wts.size(); ++k) {
                    total += wts[k];
                    if (wts[k] > wts[largest]) largest = k;
                }
                wts[largest] += Rational(1) - total;
                if (wts[largest] <= Rational(0)) throw solver_error("weight rounding degenerated");
                for (size_t k = 0; k < wts.size(); ++k) {
                    w.xy_atoms.push_back(atoms[idx[k]]);
                    w.weights.push_back(wts[k]);
                }
                res.kind = FeasibilityResult::Kind::Feasible;
                res.witness = std::move(w);
                return res;
            }
            separator = separator_poly_b(*out.farkas);
            farkas_ok = out.farkas_strict;
        }

        // Rescale the functional to unit magnitude over the sampled atoms: the
        // duals can come back in a near-null direction of the badly
        // conditioned high-degree basis, where absolute tolerances mean
        // nothing. A positive rescale keeps the certificate intact.
        {
            BigReal mag(digits);
            for (const auto& a : atoms) {
                BigReal v = separator->eval(BigReal::from_rational(a.first, digits),
                                            BigReal::from_rational(a.second, digits));
                if (c == CaseId::A) {
                    // atoms are symmetric pairs; evaluate through the feature map
                    v = BigReal(digits);
                    auto f = featurize_sym(a.first, a.second);
                    auto [c0, coeffs] = decompose_over_basis(*separator, MomentBasis::a5());
                    v = BigReal::from_rational(c0, digits);
                    for (size_t i = 0; i < coeffs.size(); ++i)
                        v = v + BigReal::from_rational(coeffs[i] * f[i], digits);
                }
                if (v.abs() > mag) mag = v.abs();
            }
            if (mag.is_zero()) {
                res.kind = FeasibilityResult::Kind::Indeterminate;
                res.diagnostics = "separator vanishes on every sampled atom";
                return res;
            }
            long e = mag.exponent2();
            mpz_class pow2 = mpz_class(1) << static_cast<unsigned long>(e >= 0 ? e : -e);
            Rational scale = e >= 0 ? Rational(pow2) : Rational(1) / Rational(pow2);
            *separator = separator->scale(Rational(1) / scale);
        }
        Rational sep_avg = expectation(*separator, target);
        Rational delta = -sep_avg;
        auto cand = stationary_candidates(*separator, r, sep_opts);
        const BigReal& min_val = cand.front().value;
        BigReal sep_tol = BigReal::from_double(tol_sep, digits);
        bool min_clean = min_val >= -sep_tol;
        bool delta_clear = delta > Rational(0) &&
                           BigReal::from_rational(delta, digits) > sep_tol * BigReal::from_long(10, digits);
        if (min_clean && delta_clear && farkas_ok) {
            res.kind = FeasibilityResult::Kind::Infeasible;
            res.separator = std::move(*separator);
            res.separation = delta;
            return res;
        }

        // exchange: push the violating stratum minima into the pool
        int added = 0;
        for (const auto& cp : cand) {
            if (added >= 16) break;
            if (!(cp.value < -sep_tol)) break;  // sorted ascending
            auto snapped = c == CaseId::A ? snap_atom_a(r, cp) : snap_atom_b(r, cp);
            if (!snapped) continue;
            if (!atom_in_region(c, r, *snapped)) continue;
            if (!pool_index.insert(*snapped).second) continue;
            pool->push_back(*snapped);
            atoms.push_back(*snapped);
            if (c == CaseId::A) {
                solver_a->add_column(featurize_sym(snapped->first, snapped->second));
            } else {
                solver_b->add_column(featurize(BigReal::from_rational(snapped->first, digits),
                                               BigReal::from_rational(snapped->second, digits),
                                               MomentBasis::b32()));
            }
            ++added;
        }
        if (added == 0) {
            res.kind = FeasibilityResult::Kind::Indeterminate;
            res.diagnostics = "exchange stalled: separator min " + min_val.to_string(6) +
                              ", separation " + delta.to_decimal_string(6);
            return res;
        }
    }
    res.kind = FeasibilityResult::Kind::Indeterminate;
    res.diagnostics = "round budget exhausted";
    return res;
}

namespace {

Region make_region(ConstraintForm form, ConstraintDir dir, const Rational& bound) {
    return Region::with(form, dir, bound);
}

}  // namespace

ThresholdResult threshold(CaseId c, ConstraintForm form, ConstraintDir dir, double tol,
                          const FeasibilityOptions& opts) {
    if (!(tol > 0)) throw input_error("threshold tolerance must be positive");
    auto t0 = std::chrono::steady_clock::now();

    // weak endpoint (nearly the full box) and strong endpoint (corner sliver)
    Rational span_lo = Rational(-4) + Rational(1, 1000);
    Rational span_hi = Rational(4) - Rational(1, 1000);
    Rational u_weak = dir == ConstraintDir::Geq ? span_lo : span_hi;
    Rational u_strong = dir == ConstraintDir::Geq ? span_hi : span_lo;

    ThresholdResult out;
    std::vector<AtomPair> pool;

    auto probe = [&](const Rational& bound) {
        return feasible_at(c, make_region(form, dir, bound), opts, &pool);
    };

    auto weak_res = probe(u_weak);
    if (weak_res.kind != FeasibilityResult::Kind::Feasible)
        throw input_error("no valid initial bracket: weak endpoint not feasible");
    auto strong_res = probe(u_strong);
    if (strong_res.kind != FeasibilityResult::Kind::Infeasible)
        throw input_error("no valid initial bracket: strong endpoint not infeasible");

    out.u_feasible = u_weak;
    out.u_infeasible = u_strong;
    out.witness = *weak_res.witness;
    out.separator = *strong_res.separator;
    out.trace.push_back({u_weak, +1});
    out.trace.push_back({u_strong, -1});

    Rational tol_q = BigReal::from_double(tol).to_rational_exact();
    while ((out.u_infeasible - out.u_feasible).abs() > tol_q) {
        // Split at the midpoint; specific bounds (such as exactly zero) can put
        // the target onto a supporting hyperplane of the hull, where no finite
        // precision carries a strict certificate. A shifted split point steps
        // around such measure-zero bounds.
        FeasibilityResult res;
        Rational mid;
        bool decided = false;
        for (int attempt = 0; attempt < 4 && !decided; ++attempt) {
            Rational frac = attempt == 0 ? Rational(1, 2) : Rational(8 + attempt, 16);
            mid = out.u_feasible + (out.u_infeasible - out.u_feasible) * frac;
            res = probe(mid);
            ++out.iterations;
            decided = res.kind != FeasibilityResult::Kind::Indeterminate;
        }
        if (!decided)
            throw solver_error("indeterminate at bound " + mid.to_decimal_string(18) + ": " +
                               res.diagnostics);
        if (res.kind == FeasibilityResult::Kind::Feasible) {
            out.u_feasible = mid;
            out.witness = *res.witness;
            out.trace.push_back({mid, +1});
        } else {
            out.u_infeasible = mid;
            out.separator = *res.separator;
            out.trace.push_back({mid, -1});
        }
    }

    // monotonic sanity over the whole trace
    for (const auto& [uf, kf] : out.trace)
        for (const auto& [ui, ki] : out.trace)
            if (kf > 0 && ki < 0) {
                bool ordered = dir == ConstraintDir::Geq ? uf < ui : uf > ui;
                if (!ordered) throw solver_error("bisection trace violates monotonicity");
            }

    // endpoint certificates re-verify through certify, with no solver state
    const MomentVector& target = case_target(c);
    Region feas_region = make_region(form, dir, out.u_feasible);
    if (c == CaseId::A) {
        auto rep = verify_measure(out.witness.sym_atoms, out.witness.weights, feas_region, target);
        out.witness_verdict = rep.verdict;
    } else {
        auto rep = verify_measure(out.witness.xy_atoms, out.witness.weights, feas_region, target,
                                  opts.tol_lp, opts.digits);
        out.witness_verdict = rep.verdict;
    }
    HyperplaneOptions ho;
    ho.digits = opts.digits;
    ho.lb_gap = 0.05;
    auto hrep = verify_hyperplane(out.separator, make_region(form, dir, out.u_infeasible), target, ho);
    out.separator_verdict = hrep.verdict;

    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace tracehull
