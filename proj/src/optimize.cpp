#include "tracehull/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "tracehull/errors.hpp"

namespace tracehull {

namespace {

BigReal ueval(const std::vector<BigReal>& c, const BigReal& x) {
    BigReal acc(x.precision_digits());
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<BigReal> uderiv(const std::vector<BigReal>& c) {
    std::vector<BigReal> d;
    for (size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * BigReal::from_long(static_cast<long>(i), c[i].precision_digits()));
    if (d.empty()) d.push_back(BigReal(c.empty() ? BigReal::kDefaultDigits : c[0].precision_digits()));
    return d;
}

BigReal coeff_scale(const std::vector<BigReal>& c, const BigReal& a, const BigReal& b) {
    int digits = a.precision_digits();
    BigReal m = a.abs();
    if (b.abs() > m) m = b.abs();
    if (m < BigReal::from_long(1, digits)) m = BigReal::from_long(1, digits);
    BigReal scale(digits), p = BigReal::from_long(1, digits);
    for (const auto& coef : c) {
        scale = scale + coef.abs() * p;
        p = p * m;
    }
    return scale;
}

}  // namespace

namespace detail {

std::vector<BigReal> poly_roots_interval(const std::vector<BigReal>& coeffs, const BigReal& a,
                                         const BigReal& b) {
    const int digits = a.precision_digits();
    const BigReal zero(digits);
    std::vector<BigReal> c = coeffs;
    BigReal cmax(digits);
    for (const auto& v : c)
        if (v.abs() > cmax) cmax = v.abs();
    if (cmax.is_zero()) return {};  // identically zero: no isolated roots
    BigReal trim = cmax * BigReal::pow10(-(digits - 4), digits);
    while (c.size() > 1 && c.back().abs() <= trim) c.pop_back();
    if (c.size() <= 1) return {};
    if (a >= b) return {};

    const BigReal feps = coeff_scale(c, a, b) * BigReal::pow10(-(digits - 8), digits);
    std::vector<BigReal> roots;
    auto push_root = [&](const BigReal& r) {
        BigReal sep = BigReal::pow10(-(digits - 10), digits) *
                      (BigReal::from_long(1, digits) + r.abs());
        for (const auto& prev : roots)
            if ((prev - r).abs() <= sep) return;
        roots.push_back(r);
    };

    if (c.size() == 2) {
        BigReal r = -(c[0] / c[1]);
        if (r >= a && r <= b) push_root(r);
        return roots;
    }

    std::vector<BigReal> d = uderiv(c);
    std::vector<BigReal> crit = poly_roots_interval(d, a, b);
    std::vector<BigReal> pts;
    pts.push_back(a);
    for (const auto& r : crit)
        if (r > a && r < b) pts.push_back(r);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end(), [](const BigReal& p, const BigReal& q) { return p < q; });

    std::vector<BigReal> vals;
    vals.reserve(pts.size());
    for (const auto& p : pts) vals.push_back(ueval(c, p));

    for (size_t i = 0; i < pts.size(); ++i)
        if (vals[i].abs() <= feps) push_root(pts[i]);

    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (vals[i].abs() <= feps || vals[i + 1].abs() <= feps) continue;
        if (vals[i].sgn() * vals[i + 1].sgn() >= 0) continue;
        // Safeguarded Newton within the bracket; the function is monotone here
        // (no interior critical points), so this converges.
        BigReal lo = pts[i], hi = pts[i + 1];
        BigReal flo = vals[i];
        BigReal x = (lo + hi) * BigReal::from_rational(Rational(1, 2), digits);
        const BigReal step_tol =
            BigReal::pow10(-(digits - 4), digits) * (BigReal::from_long(1, digits) + x.abs());
        for (int iter = 0; iter < 40 * digits; ++iter) {
            BigReal fx = ueval(c, x);
            if (fx.abs() <= feps) break;
            if (fx.sgn() == flo.sgn()) lo = x;
            else hi = x;
            BigReal dfx = ueval(d, x);
            bool newton_ok = false;
            if (!dfx.is_zero()) {
                BigReal cand = x - fx / dfx;
                if (cand > lo && cand < hi) {
                    BigReal moved = (cand - x).abs();
                    x = cand;
                    newton_ok = true;
                    if (moved <= step_tol) break;
                }
            }
            if (!newton_ok) {
                BigReal mid = (lo + hi) * BigReal::from_rational(Rational(1, 2), digits);
                if ((hi - lo).abs() <= step_tol) {
                    x = mid;
                    break;
                }
                x = mid;
            }
        }
        if (x >= a && x <= b) push_root(x);
    }
    std::sort(roots.begin(), roots.end(), [](const BigReal& p, const BigReal& q) { return p < q; });
    return roots;
}

}  // namespace detail

namespace {

struct Candidate {
    BigReal x, y;
    std::vector<std::string> active;
    bool polished = true;
};

std::vector<BigReal> to_bigreal_coeffs(const std::vector<Rational>& c, int digits) {
    std::vector<BigReal> out;
    out.reserve(c.size());
    for (const auto& q : c) out.push_back(BigReal::from_rational(q, digits));
    return out;
}

// Feasible sub-interval of the free coordinate along the edge {fixed = c}.
// Returns false if the edge misses the region.
bool edge_interval(const Region& r, bool x_fixed, const Rational& c, Rational& lo, Rational& hi) {
    lo = r.lo;
    hi = r.hi;
    if (!r.constraint) return true;
    const Rational& b = r.constraint->bound;
    bool geq = r.constraint->dir == ConstraintDir::Geq;
    if (r.constraint->form == ConstraintForm::Sum) {
        Rational cut = b - c;
        if (geq) lo = std::max(lo, cut);
        else hi = std::min(hi, cut);
    } else {
        (void)x_fixed;
        if (c.is_zero()) {
            bool whole = geq ? (Rational(0) >= b) : (Rational(0) <= b);
            return whole && lo <= hi;
        }
        Rational cut = b / c;
        bool lower_side = (c.sign() > 0) == geq;  // y >= cut when (c>0, >=) or (c<0, <=)
        if (lower_side) lo = std::max(lo, cut);
        else hi = std::min(hi, cut);
    }
    return lo <= hi;
}

// x-intervals of the branches of x*y = v inside the box (v != 0).
std::vector<std::pair<Rational, Rational>> hyperbola_branches(const Region& r, const Rational& v) {
    std::vector<std::pair<Rational, Rational>> out;
    if (v.is_zero()) return out;
    if (v.sign() > 0) {
        if (r.hi.sign() > 0 && v / r.hi <= r.hi) out.push_back({v / r.hi, r.hi});
        if (r.lo.sign() < 0 && v / r.lo >= r.lo) out.push_back({r.lo, v / r.lo});
    } else {
        if (r.lo.sign() < 0 && v / r.lo <= r.hi && r.hi.sign() > 0) out.push_back({v / r.lo, r.hi});
        if (r.hi.sign() > 0 && v / r.hi >= r.lo && r.lo.sign() < 0) out.push_back({r.lo, v / r.hi});
    }
    return out;
}

struct DoubleEval {
    std::vector<int> dx, dy;
    std::vector<double> c;
    int max_dx = 0, max_dy = 0;

    explicit DoubleEval(const Poly2& p) {
        for (const auto& [m, q] : p.terms()) {
            dx.push_back(m.dx);
            dy.push_back(m.dy);
            c.push_back(q.to_double());
            max_dx = std::max(max_dx, m.dx);
            max_dy = std::max(max_dy, m.dy);
        }
    }
    double eval(double x, double y) const {
        double xp[17], yp[17];
        xp[0] = yp[0] = 1;
        for (int i = 1; i <= max_dx; ++i) xp[i] = xp[i - 1] * x;
        for (int i = 1; i <= max_dy; ++i) yp[i] = yp[i - 1] * y;
        double acc = 0;
        for (size_t t = 0; t < c.size(); ++t) acc += c[t] * xp[dx[t]] * yp[dy[t]];
        return acc;
    }
};

}  // namespace

std::string MinResult::active_set_string() const {
    if (active_set.empty()) return "interior";
    std::string s;
    for (const auto& a : active_set) {
        if (!s.empty()) s += ",";
        s += a;
    }
    return s;
}

namespace {

std::vector<Candidate> collect_candidates(const Poly2& p, const Region& r, const MinOptions& opts) {
    if (r.is_empty()) throw input_error("global_min over empty region");
    const int digits = std::max(opts.digits, BigReal::kMinDigits);
    const int grid_n = std::max(opts.grid_n, 9);
    const BigReal zero(digits);
    const BigReal one = BigReal::from_long(1, digits);

    // coefficient scale: sum |c| * hi^(i+j), a Lipschitz-flavored magnitude
    BigReal cscale = one;
    {
        BigReal m = BigReal::from_rational(std::max(r.hi.abs(), r.lo.abs()), digits);
        for (const auto& [mono, q] : p.terms())
            cscale = cscale + BigReal::from_rational(q.abs(), digits) * m.pow_int(mono.degree());
    }
    BigReal region_tol = cscale * BigReal::pow10(-(digits - 6), digits);

    std::vector<Candidate> cands;
    auto add_vertex = [&](const Rational& x, const Rational& y, std::vector<std::string> active) {
        if (!r.contains(x, y)) return;
        cands.push_back({BigReal::from_rational(x, digits), BigReal::from_rational(y, digits),
                         std::move(active), true});
    };

    // box corners
    add_vertex(r.lo, r.lo, {"x=lo", "y=lo"});
    add_vertex(r.lo, r.hi, {"x=lo", "y=hi"});
    add_vertex(r.hi, r.lo, {"x=hi", "y=lo"});
    add_vertex(r.hi, r.hi, {"x=hi", "y=hi"});

    // the four edges, cut to the feasible sub-interval
    struct EdgeSpec {
        bool x_fixed;
        Rational value;
        const char* name;
    };
    const EdgeSpec edges[] = {{true, r.lo, "x=lo"}, {true, r.hi, "x=hi"},
                              {false, r.lo, "y=lo"}, {false, r.hi, "y=hi"}};
    for (const auto& e : edges) {
        Rational ia, ib;
        if (!edge_interval(r, e.x_fixed, e.value, ia, ib)) continue;
        std::vector<Rational> line = e.x_fixed
            ? p.substitute_line(Rational(0), e.value, Rational(1), Rational(0))
            : p.substitute_line(Rational(1), Rational(0), Rational(0), e.value);
        auto coeffs = to_bigreal_coeffs(line, digits);
        BigReal ba = BigReal::from_rational(ia, digits), bb = BigReal::from_rational(ib, digits);
        BigReal fx = BigReal::from_rational(e.value, digits);
        auto put = [&](const BigReal& t, const char* second) {
            Candidate cand{e.x_fixed ? fx : t, e.x_fixed ? t : fx, {e.name}, true};
            if (second) cand.active.push_back(second);
            cands.push_back(std::move(cand));
        };
        // interval endpoints: box corners are already candidates, the other
        // endpoints are edge-meets-constraint vertices
        if (ia != r.lo) put(ba, "constraint-curve");
        if (ib != r.hi) put(bb, "constraint-curve");
        for (const auto& t : detail::poly_roots_interval(uderiv(coeffs), ba, bb)) put(t, nullptr);
    }

    // constraint curve strata
    if (r.constraint) {
        const Rational& b = r.constraint->bound;
        if (r.constraint->form == ConstraintForm::Sum) {
            Rational ia = std::max(r.lo, b - r.hi), ib = std::min(r.hi, b - r.lo);
            if (ia <= ib) {
                auto line = p.substitute_line(Rational(1), Rational(0), Rational(-1), b);
                auto coeffs = to_bigreal_coeffs(line, digits);
                BigReal ba = BigReal::from_rational(ia, digits), bb = BigReal::from_rational(ib, digits);
                BigReal bu = BigReal::from_rational(b, digits);
                auto put = [&](const BigReal& t) {
                    cands.push_back({t, bu - t, {"constraint-curve"}, true});
                };
                put(ba);
                put(bb);
                for (const auto& t : detail::poly_roots_interval(uderiv(coeffs), ba, bb)) put(t);
            }
        } else if (b.is_zero()) {
            // degenerate curve: the two axes
            for (bool x_axis : {true, false}) {
                std::vector<Rational> line = x_axis
                    ? p.substitute_line(Rational(1), Rational(0), Rational(0), Rational(0))
                    : p.substitute_line(Rational(0), Rational(0), Rational(1), Rational(0));
                auto coeffs = to_bigreal_coeffs(line, digits);
                BigReal ba = BigReal::from_rational(r.lo, digits), bb = BigReal::from_rational(r.hi, digits);
                auto put = [&](const BigReal& t) {
                    cands.push_back({x_axis ? t : zero, x_axis ? zero : t, {"constraint-curve"}, true});
                };
                put(ba);
                put(bb);
                put(zero);
                for (const auto& t : detail::poly_roots_interval(uderiv(coeffs), ba, bb)) put(t);
            }
        } else {
            // N(t) = t^(dy+1+deg) * d/dt [p(t, v/t)] is a polynomial; its roots
            // off t = 0 are the curve's critical points.
            int dymax = 0, dxmax = 0;
            for (const auto& [m, q] : p.terms()) {
                dymax = std::max(dymax, m.dy);
                dxmax = std::max(dxmax, m.dx);
            }
            // p(t, v/t) = sum c_ij v^j t^(i-j); derivative terms (i-j) t^(i-j-1)
            // shifted by t^(dymax+1) into nonnegative powers.
            std::vector<Rational> n_poly(static_cast<size_t>(dxmax + dymax + 1), Rational(0));
            for (const auto& [m, q] : p.terms()) {
                int e = m.dx - m.dy;
                if (e == 0) continue;
                n_poly[static_cast<size_t>(e - 1 + dymax + 1)] += q * b.pow(static_cast<unsigned>(m.dy)) * Rational(e);
            }
            auto coeffs = to_bigreal_coeffs(n_poly, digits);
            BigReal bv = BigReal::from_rational(b, digits);
            for (const auto& [ia, ib] : hyperbola_branches(r, b)) {
                BigReal ba = BigReal::from_rational(ia, digits), bb = BigReal::from_rational(ib, digits);
                auto put = [&](const BigReal& t) {
                    if (t.is_zero()) return;
                    cands.push_back({t, bv / t, {"constraint-curve"}, true});
                };
                put(ba);
                put(bb);
                for (const auto& t : detail::poly_roots_interval(coeffs, ba, bb)) put(t);
            }
        }
    }

    // interior: coarse scan for Newton seeds
    DoubleEval de(p);
    const double dlo = r.lo.to_double(), dhi = r.hi.to_double();
    const double step = (dhi - dlo) / (grid_n - 1);
    std::vector<double> vals(static_cast<size_t>(grid_n) * static_cast<size_t>(grid_n),
                             std::numeric_limits<double>::infinity());
    double best_grid = std::numeric_limits<double>::infinity();
    int best_gi = -1, best_gj = -1;
    for (int i = 0; i < grid_n; ++i) {
        double x = dlo + i * step;
        for (int j = 0; j < grid_n; ++j) {
            double y = dlo + j * step;
            if (!r.contains(x, y, 0.0)) continue;
            double v = de.eval(x, y);
            vals[static_cast<size_t>(i) * grid_n + j] = v;
            if (v < best_grid) {
                best_grid = v;
                best_gi = i;
                best_gj = j;
            }
        }
    }
    std::vector<std::pair<double, std::pair<int, int>>> seeds;
    for (int i = 1; i + 1 < grid_n; ++i) {
        for (int j = 1; j + 1 < grid_n; ++j) {
            double v = vals[static_cast<size_t>(i) * grid_n + j];
            if (!std::isfinite(v)) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    double w = vals[static_cast<size_t>(i + di) * grid_n + (j + dj)];
                    if (std::isfinite(w) && w < v) {
                        is_min = false;
                        break;
                    }
                }
            if (is_min) seeds.push_back({v, {i, j}});
        }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (seeds.size() > 32) seeds.resize(32);

    // Newton launch points: the grid minima plus every 1-d stratum candidate,
    // so interior basins hugging an edge are found at any grid resolution.
    std::vector<std::pair<BigReal, BigReal>> newton_seeds;
    for (const auto& [seed_val, ij] : seeds) {
        (void)seed_val;
        newton_seeds.push_back({BigReal::from_double(dlo + ij.first * step, digits),
                                BigReal::from_double(dlo + ij.second * step, digits)});
    }
    for (const auto& cand : cands)
        if (!cand.active.empty()) newton_seeds.push_back({cand.x, cand.y});

    // best raw grid point rounds out the candidate set
    if (best_gi >= 0) {
        Rational gx = r.lo + Rational(best_gi) * (r.hi - r.lo) / Rational(grid_n - 1);
        Rational gy = r.lo + Rational(best_gj) * (r.hi - r.lo) / Rational(grid_n - 1);
        if (r.contains(gx, gy))
            cands.push_back({BigReal::from_rational(gx, digits), BigReal::from_rational(gy, digits), {}, true});
    }

    Poly2 px = p.deriv_x(), py = p.deriv_y();
    Poly2 pxx = px.deriv_x(), pxy = px.deriv_y(), pyy = py.deriv_y();
    const BigReal newton_gtol = cscale * BigReal::pow10(-(digits - 8), digits);
    for (const auto& seed : newton_seeds) {
        BigReal x = seed.first;
        BigReal y = seed.second;
        bool ok = false;
        BigReal gx = px.eval(x, y), gy = py.eval(x, y);
        for (int iter = 0; iter < 120; ++iter) {
            BigReal gn = gx.abs() + gy.abs();
            if (gn <= newton_gtol) {
                ok = true;
                break;
            }
            BigReal hxx = pxx.eval(x, y), hxy = pxy.eval(x, y), hyy = pyy.eval(x, y);
            BigReal det = hxx * hyy - hxy * hxy;
            if (det.abs() <= cscale * cscale * BigReal::pow10(-(digits - 6), digits)) break;
            BigReal sx = -(hyy * gx - hxy * gy) / det;
            BigReal sy = -(hxx * gy - hxy * gx) / det;
            // damping: halve until the gradient norm does not grow
            BigReal lambda = one;
            bool accepted = false;
            for (int h = 0; h < 30; ++h) {
                BigReal nx = x + sx * lambda, ny = y + sy * lambda;
                BigReal ngx = px.eval(nx, ny), ngy = py.eval(nx, ny);
                if (ngx.abs() + ngy.abs() < gn) {
                    x = nx;
                    y = ny;
                    gx = ngx;
                    gy = ngy;
                    accepted = true;
                    break;
                }
                lambda = lambda * BigReal::from_rational(Rational(1, 2), digits);
            }
            if (!accepted) break;
            // give up on runaways
            if (x.abs() > BigReal::from_rational(r.hi.abs() + Rational(1), digits) ||
                y.abs() > BigReal::from_rational(r.hi.abs() + Rational(1), digits))
                break;
        }
        if (!ok) continue;
        if (!r.contains(x, y, region_tol)) continue;
        cands.push_back({x, y, {}, true});
    }

    if (cands.empty()) {
        // region is a sliver the lattice missed entirely; fall back to grid points
        for (const auto& [qx, qy] : r.grid(std::min(grid_n, 65)))
            cands.push_back({BigReal::from_rational(qx, digits), BigReal::from_rational(qy, digits),
                             {"constraint-curve"}, true});
    }
    if (cands.empty()) throw solver_error("no feasible candidate found");
    return cands;
}

}  // namespace

std::vector<CandidatePoint> stationary_candidates(const Poly2& p, const Region& r,
                                                  const MinOptions& opts) {
    auto cands = collect_candidates(p, r, opts);
    std::vector<CandidatePoint> out;
    out.reserve(cands.size());
    for (auto& c : cands) out.push_back({c.x, c.y, p.eval(c.x, c.y), std::move(c.active)});
    std::sort(out.begin(), out.end(),
              [](const CandidatePoint& a, const CandidatePoint& b) { return a.value < b.value; });
    return out;
}

MinResult global_min(const Poly2& p, const Region& r, const MinOptions& opts) {
    const int digits = std::max(opts.digits, BigReal::kMinDigits);
    const BigReal zero(digits);
    auto cands = collect_candidates(p, r, opts);

    BigReal cscale = BigReal::from_long(1, digits);
    {
        BigReal m = BigReal::from_rational(std::max(r.hi.abs(), r.lo.abs()), digits);
        for (const auto& [mono, q] : p.terms())
            cscale = cscale + BigReal::from_rational(q.abs(), digits) * m.pow_int(mono.degree());
    }

    // pick the winner: strict value order, exact ties broken lexicographically
    size_t best = 0;
    BigReal best_val = p.eval(cands[0].x, cands[0].y);
    for (size_t i = 1; i < cands.size(); ++i) {
        BigReal v = p.eval(cands[i].x, cands[i].y);
        int c = v.cmp(best_val);
        if (c < 0 || (c == 0 && (cands[i].x < cands[best].x ||
                                 (cands[i].x == cands[best].x && cands[i].y < cands[best].y)))) {
            best = i;
            best_val = v;
        }
    }

    MinResult out;
    out.x = cands[best].x;
    out.y = cands[best].y;
    out.value = best_val;
    out.active_set = cands[best].active;

    // reduced gradient on the winning stratum
    Poly2 px = p.deriv_x(), py = p.deriv_y();
    BigReal gx = px.eval(out.x, out.y), gy = py.eval(out.x, out.y);
    const auto& act = out.active_set;
    auto has = [&](const char* s) {
        return std::find(act.begin(), act.end(), s) != act.end();
    };
    if (act.empty()) {
        out.kkt_residual = std::max(gx.abs(), gy.abs(), [](const BigReal& u, const BigReal& v) { return u < v; });
    } else if (act.size() >= 2) {
        out.kkt_residual = zero;  // vertex
    } else if (has("x=lo") || has("x=hi")) {
        out.kkt_residual = gy.abs();
    } else if (has("y=lo") || has("y=hi")) {
        out.kkt_residual = gx.abs();
    } else {
        // constraint curve
        if (r.constraint->form == ConstraintForm::Sum) {
            out.kkt_residual = (gx - gy).abs();
        } else if (out.x.is_zero() || out.y.is_zero()) {
            out.kkt_residual = out.x.is_zero() ? gy.abs() : gx.abs();  // on an axis branch
        } else {
            out.kkt_residual = (gx - (out.y / out.x) * gy).abs();
        }
    }
    BigReal tol = opts.tol_kkt > 0 ? BigReal::from_double(opts.tol_kkt, digits)
                                   : cscale * BigReal::pow10(-(digits - 10), digits);
    out.converged = out.kkt_residual <= tol;
    return out;
}

BoundResult lower_bound(const Poly2& p, const Region& r, double gap, long budget) {
    if (r.is_empty()) throw input_error("lower_bound over empty region");
    if (!(gap > 0)) throw input_error("gap must be positive");

    struct Term {
        int i, j;
        double a;  // |coefficient|
        double c;  // signed coefficient
    };
    std::vector<Term> terms;
    for (const auto& [m, q] : p.terms()) terms.push_back({m.dx, m.dy, std::abs(q.to_double()), q.to_double()});

    const double dlo = r.lo.to_double(), dhi = r.hi.to_double();
    const bool has_con = r.constraint.has_value();
    const double bnd = has_con ? r.constraint->bound.to_double() : 0;
    const bool is_sum = has_con && r.constraint->form == ConstraintForm::Sum;
    const bool is_geq = has_con && r.constraint->dir == ConstraintDir::Geq;
    const double keep_slack = 1e-9;  // keep cells unless provably outside

    auto cell_outside = [&](double x0, double x1, double y0, double y1) {
        if (!has_con) return false;
        if (is_sum) {
            double lo_v = x0 + y0, hi_v = x1 + y1;
            return is_geq ? (hi_v < bnd - keep_slack) : (lo_v > bnd + keep_slack);
        }
        double c1 = x0 * y0, c2 = x0 * y1, c3 = x1 * y0, c4 = x1 * y1;
        double lo_v = std::min({c1, c2, c3, c4}), hi_v = std::max({c1, c2, c3, c4});
        return is_geq ? (hi_v < bnd - keep_slack) : (lo_v > bnd + keep_slack);
    };

    auto eval_pm = [&](double x, double y, double& value, double& vmax) {
        double xp[17], yp[17];
        xp[0] = yp[0] = 1;
        for (int k = 1; k <= 16; ++k) {
            xp[k] = xp[k - 1] * x;
            yp[k] = yp[k - 1] * y;
        }
        value = 0;
        vmax = 0;
        for (const auto& t : terms) {
            value += t.c * xp[t.i] * yp[t.j];
            vmax += t.a * std::abs(xp[t.i] * yp[t.j]);
        }
    };

    struct Cell {
        double x0, x1, y0, y1;
        double lb;
        bool operator<(const Cell& o) const { return lb > o.lb; }  // min-heap
    };

    // signed-coefficient tables for the two first partials (for center values)
    std::vector<Term> dx_terms, dy_terms;
    for (const auto& t : terms) {
        if (t.i > 0) dx_terms.push_back({t.i - 1, t.j, std::abs(t.c * t.i), t.c * t.i});
        if (t.j > 0) dy_terms.push_back({t.i, t.j - 1, std::abs(t.c * t.j), t.c * t.j});
    }
    auto eval_terms = [](const std::vector<Term>& ts, double x, double y, double& value, double& vmax) {
        double xp[17], yp[17];
        xp[0] = yp[0] = 1;
        for (int k = 1; k <= 16; ++k) {
            xp[k] = xp[k - 1] * x;
            yp[k] = yp[k - 1] * y;
        }
        value = 0;
        vmax = 0;
        for (const auto& t : ts) {
            value += t.c * xp[t.i] * yp[t.j];
            vmax += t.a * std::abs(xp[t.i] * yp[t.j]);
        }
    };

    auto make_cell = [&](double x0, double x1, double y0, double y1) {
        double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        double hx = 0.5 * (x1 - x0), hy = 0.5 * (y1 - y0);
        double mx = std::max(std::abs(x0), std::abs(x1));
        double my = std::max(std::abs(y0), std::abs(y1));
        double xp[17], yp[17];
        xp[0] = yp[0] = 1;
        for (int k = 1; k <= 16; ++k) {
            xp[k] = xp[k - 1] * mx;
            yp[k] = yp[k - 1] * my;
        }
        // coefficient-sum bounds over the cell ranges: first partials and all
        // second partials
        double gx = 0, gy = 0, hxx = 0, hxy = 0, hyy = 0, vmag = 0;
        for (const auto& t : terms) {
            double base = t.a * xp[t.i] * yp[t.j];
            vmag += base;
            if (t.i > 0) gx += t.a * t.i * xp[t.i - 1] * yp[t.j];
            if (t.j > 0) gy += t.a * t.j * xp[t.i] * yp[t.j - 1];
            if (t.i > 1) hxx += t.a * t.i * (t.i - 1) * xp[t.i - 2] * yp[t.j];
            if (t.i > 0 && t.j > 0) hxy += t.a * t.i * t.j * xp[t.i - 1] * yp[t.j - 1];
            if (t.j > 1) hyy += t.a * t.j * (t.j - 1) * xp[t.i] * yp[t.j - 2];
        }
        double pc, pmax, gxc, gxmax, gyc, gymax;
        eval_pm(cx, cy, pc, pmax);
        eval_terms(dx_terms, cx, cy, gxc, gxmax);
        eval_terms(dy_terms, cx, cy, gyc, gymax);
        // Mean-value bound from the center: the partials on the segment are
        // within Hessian-sum * halfwidth of their center values; the plain
        // coordinate-range gradient sum is kept as the coarse alternative.
        double bx = std::min(gx, std::abs(gxc) + hxx * hx + hxy * hy);
        double by = std::min(gy, std::abs(gyc) + hxy * hx + hyy * hy);
        // floating-point allowance: forward error of these short sums is far
        // below 1e-13 of the coefficient-magnitude sums at these degrees
        double err = 1e-13 * (vmag + pmax + hx * gxmax + hy * gymax) + 1e-300;
        double lb = pc - (hx * bx + hy * by) * (1 + 1e-12) - err;
        return Cell{x0, x1, y0, y1, lb};
    };

    double upper = std::numeric_limits<double>::infinity();
    auto eval_upper = [&](double x, double y) {
        double v, vmax;
        eval_pm(x, y, v, vmax);
        upper = std::min(upper, v + 1e-13 * vmax);
    };
    // probes must be strictly inside to survive double rounding
    auto try_upper = [&](double x, double y) {
        if (!r.contains(x, y, -1e-9)) return;
        eval_upper(x, y);
    };
    for (const auto& [qx, qy] : r.grid(65)) {
        if (!r.contains(qx, qy)) continue;  // exact membership for lattice seeds
        eval_upper(qx.to_double(), qy.to_double());
    }

    std::priority_queue<Cell> queue;
    queue.push(make_cell(dlo, dhi, dlo, dhi));
    long processed = 0;
    double bound = queue.top().lb;
    while (!queue.empty()) {
        Cell cell = queue.top();
        bound = cell.lb;
        if (bound >= upper - gap) break;
        if (processed >= budget) break;
        queue.pop();
        ++processed;
        double cx = 0.5 * (cell.x0 + cell.x1), cy = 0.5 * (cell.y0 + cell.y1);
        try_upper(cx, cy);
        if (has_con && is_sum) {
            // project the center onto the boundary line for an extra feasible probe
            double t = 0.5 * (bnd - cx - cy);
            try_upper(cx + t, cy + t);
        }
        const double xs[3] = {cell.x0, cx, cell.x1};
        const double ys[3] = {cell.y0, cy, cell.y1};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                if (cell_outside(xs[a], xs[a + 1], ys[b], ys[b + 1])) continue;
                queue.push(make_cell(xs[a], xs[a + 1], ys[b], ys[b + 1]));
            }
        if (queue.empty()) {
            if (std::isfinite(upper)) bound = upper;  // every cell was provably outside
            break;
        }
    }

    BoundResult out;
    out.bound = BigReal::from_double(bound);
    out.achieved_gap = upper - bound;
    out.converged = out.achieved_gap <= gap;
    out.cells = processed;
    return out;
}

}  // namespace tracehull
