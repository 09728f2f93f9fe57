#include "tracehull/lp.hpp"

#include <algorithm>

namespace tracehull {

namespace {

template <typename S>
S pivot_tolerance(const S& like);

template <>
Rational pivot_tolerance(const Rational&) {
    return Rational(0);
}

template <>
BigReal pivot_tolerance(const BigReal& like) {
    // well below any meaningful tableau entry at this precision
    return BigReal::pow10(-(like.precision_digits() - 8), like.precision_digits());
}

template <typename S>
const S& max_abs(const S& a, const S& b) {
    return a < b ? b : a;
}

}  // namespace

template <typename S>
FeasibilitySolver<S>::FeasibilitySolver(const std::vector<S>& target, const S& tol)
    : m_(target.size() + 1),
      target_(target),
      tol_(tol),
      zero_(lp_scalar<S>::zero(target.empty() ? tol : target[0])),
      one_(lp_scalar<S>::one(zero_)),
      eps_(pivot_tolerance<S>(zero_)) {
    using T = lp_scalar<S>;
    row_sign_.assign(m_, 1);
    rows_.assign(m_ + 1, {});
    rhs_.assign(m_ + 1, zero_);
    basis_.resize(m_);
    for (size_t i = 0; i < m_; ++i) {
        S b = i + 1 < m_ ? target_[i] : one_;
        if (T::is_negative(b, zero_)) {
            row_sign_[i] = -1;
            b = -b;
        }
        rows_[i].assign(m_, zero_);
        rows_[i][i] = one_;
        rhs_[i] = b;
        basis_[i] = i;
    }
    // cost row: artificial reduced costs start at zero; objective = sum(b)
    rows_[m_].assign(m_, zero_);
    S total = zero_;
    for (size_t i = 0; i < m_; ++i) total = total + rhs_[i];
    rhs_[m_] = -total;
}

template <typename S>
size_t FeasibilitySolver<S>::add_column(const std::vector<S>& col) {
    using T = lp_scalar<S>;
    if (col.size() + 1 != m_) throw input_error("column dimension mismatch");
    columns_.push_back(col);
    // transform into the current basis: the artificial block holds B^{-1}
    std::vector<S> v(m_, zero_);
    for (size_t k = 0; k < m_; ++k) {
        S raw = k + 1 < m_ ? col[k] : one_;
        v[k] = row_sign_[k] < 0 ? -raw : raw;
    }
    S ybar = zero_;  // sum over v of the dual values y_k = 1 - costrow_art[k]
    for (size_t i = 0; i < m_; ++i) {
        S acc = zero_;
        for (size_t k = 0; k < m_; ++k) {
            if (T::is_zero(rows_[i][k]) || T::is_zero(v[k])) continue;
            acc = acc + rows_[i][k] * v[k];
        }
        rows_[i].push_back(acc);
    }
    for (size_t k = 0; k < m_; ++k) {
        if (T::is_zero(v[k])) continue;
        ybar = ybar + (one_ - rows_[m_][k]) * v[k];
    }
    rows_[m_].push_back(-ybar);
    ++n_;
    return n_ - 1;
}

template <typename S>
FeasibilityOutcome<S> FeasibilitySolver<S>::solve() {
    using T = lp_scalar<S>;
    if (n_ == 0) throw input_error("feasibility needs at least one column");
    const size_t ncols = m_ + n_;
    const int max_iter = 20000 + 60 * static_cast<int>(ncols);
    const int bland_after = 30 + 4 * static_cast<int>(m_);
    int iter = 0;
    int degenerate_streak = 0;
    bool bland = false;
    for (;; ++iter) {
        if (iter > max_iter) throw solver_error("simplex cycling guard exceeded");
        if (degenerate_streak > bland_after) bland = true;
        size_t enter = ncols;
        if (bland) {
            for (size_t j = 0; j < ncols; ++j) {
                if (T::is_negative(rows_[m_][j], eps_)) {
                    enter = j;
                    break;
                }
            }
        } else {
            for (size_t j = 0; j < ncols; ++j) {
                if (!T::is_negative(rows_[m_][j], eps_)) continue;
                if (enter == ncols || rows_[m_][j] < rows_[m_][enter]) enter = j;
            }
        }
        if (enter == ncols) break;
        size_t leave = m_;
        for (size_t i = 0; i < m_; ++i) {
            if (!T::is_positive(rows_[i][enter], eps_)) continue;
            if (leave == m_) {
                leave = i;
                continue;
            }
            S diff = rhs_[i] * rows_[leave][enter] - rhs_[leave] * rows_[i][enter];
            if (T::is_negative(diff, zero_) ||
                (!T::is_positive(diff, zero_) && basis_[i] < basis_[leave]))
                leave = i;
        }
        if (leave == m_) break;  // no eligible pivot; treat as converged
        if (T::is_positive(rhs_[leave], eps_)) degenerate_streak = 0;
        else ++degenerate_streak;
        S piv = rows_[leave][enter];
        for (size_t j = 0; j < ncols; ++j) T::div_in(rows_[leave][j], piv);
        T::div_in(rhs_[leave], piv);
        for (size_t i = 0; i <= m_; ++i) {
            if (i == leave) continue;
            S f = rows_[i][enter];
            if (T::is_zero(f)) continue;
            for (size_t j = 0; j < ncols; ++j) {
                if (T::is_zero(rows_[leave][j])) continue;
                T::submul(rows_[i][j], f, rows_[leave][j]);
            }
            T::submul(rhs_[i], f, rhs_[leave]);
        }
        basis_[leave] = enter;
    }
    total_iterations_ += iter;

    S objective = -rhs_[m_];
    FeasibilityOutcome<S> out;
    out.iterations = total_iterations_;
    if (!T::is_positive(objective - tol_, zero_)) {
        out.feasible = true;
        out.weights.assign(n_, zero_);
        for (size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= m_) {
                S w = rhs_[i];
                if (T::is_negative(w, tol_)) throw solver_error("negative basic weight");
                out.weights[basis_[i] - m_] = T::is_negative(w, zero_) ? zero_ : w;
            }
        }
        S resid = hull_residual_inf(columns_, out.weights, target_);
        if (T::is_positive(resid - tol_, zero_)) throw solver_error("feasible verdict failed re-verification");
        return out;
    }

    // Farkas certificate from the phase-I duals: y_k = 1 - (reduced cost of
    // artificial k), undoing row flips; then a = -y[0..d), b = -y[d].
    Farkas<S> f;
    f.a.assign(m_ - 1, zero_);
    S b_const = zero_;
    for (size_t k = 0; k < m_; ++k) {
        S y = one_ - rows_[m_][k];
        if (row_sign_[k] < 0) y = -y;
        if (k + 1 < m_) f.a[k] = -y;
        else b_const = -y;
    }
    f.b = b_const;
    S scale = zero_;
    for (const auto& v : f.a) scale = max_abs(scale, T::abs(v));
    scale = max_abs(scale, T::abs(f.b));
    if (T::is_positive(scale, zero_)) {
        for (auto& v : f.a) v = v / scale;
        f.b = f.b / scale;
    }
    // recompute the separation directly from the normalized functional
    S at_target = f.b;
    for (size_t i = 0; i + 1 < m_; ++i) at_target = at_target + f.a[i] * target_[i];
    f.delta = -at_target;
    out.farkas_strict = farkas_valid(columns_, target_, f, tol_);
    out.feasible = false;
    out.farkas = std::move(f);
    return out;
}

template <typename S>
FeasibilityOutcome<S> solve_feasibility(const std::vector<std::vector<S>>& columns,
                                        const std::vector<S>& target, const S& tol) {
    if (columns.empty()) throw input_error("feasibility needs at least one column");
    FeasibilitySolver<S> solver(target, tol);
    for (const auto& c : columns) solver.add_column(c);
    return solver.solve();
}

template <typename S>
S hull_residual_inf(const std::vector<std::vector<S>>& columns, const std::vector<S>& weights,
                    const std::vector<S>& target) {
    using T = lp_scalar<S>;
    const S zero = T::zero(target.empty() ? weights[0] : target[0]);
    S worst = zero;
    for (size_t i = 0; i < target.size(); ++i) {
        S acc = zero;
        for (size_t j = 0; j < columns.size(); ++j) acc = acc + weights[j] * columns[j][i];
        S r = T::abs(acc - target[i]);
        if (worst < r) worst = r;
    }
    S wsum = zero;
    for (const auto& w : weights) wsum = wsum + w;
    S r = T::abs(wsum - T::one(zero));
    if (worst < r) worst = r;
    return worst;
}

template <typename S>
bool farkas_valid(const std::vector<std::vector<S>>& columns, const std::vector<S>& target,
                  const Farkas<S>& f, const S& tol) {
    using T = lp_scalar<S>;
    const S zero = T::zero(target.empty() ? f.b : target[0]);
    const S eps = pivot_tolerance<S>(zero);
    if (!T::is_positive(f.delta, zero)) return false;
    for (const auto& col : columns) {
        S v = f.b;
        for (size_t i = 0; i < target.size(); ++i) v = v + f.a[i] * col[i];
        if (T::is_negative(v + tol, zero)) return false;
    }
    S at_target = f.b;
    for (size_t i = 0; i < target.size(); ++i) at_target = at_target + f.a[i] * target[i];
    return !T::is_positive(at_target + f.delta, eps);
}

template <typename S>
std::vector<S> measure_moments(const WeightedAtoms<S>& m, const MomentBasis& basis) {
    using T = lp_scalar<S>;
    if (m.atoms.empty()) throw input_error("empty measure");
    const S zero = T::zero(m.weights[0]);
    std::vector<S> acc(basis.size(), zero);
    for (size_t j = 0; j < m.atoms.size(); ++j) {
        auto f = featurize(m.atoms[j].first, m.atoms[j].second, basis);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + m.weights[j] * f[i];
    }
    return acc;
}

template <typename S>
WeightedAtoms<S> caratheodory_reduce(const WeightedAtoms<S>& m, const MomentBasis& basis) {
    using T = lp_scalar<S>;
    if (m.atoms.size() != m.weights.size()) throw input_error("atoms/weights length mismatch");
    if (m.atoms.empty()) throw input_error("empty measure");
    WeightedAtoms<S> cur = m;
    const S zero = T::zero(cur.weights[0]);
    const S eps = pivot_tolerance<S>(zero);
    const size_t cap = basis.size() + 1;

    while (cur.atoms.size() > cap) {
        const size_t k = cur.atoms.size();
        const size_t rows = basis.size() + 1;
        // lifted atom matrix [f(atom); 1], one column per atom
        std::vector<std::vector<S>> a(rows, std::vector<S>(k, zero));
        for (size_t j = 0; j < k; ++j) {
            auto f = featurize(cur.atoms[j].first, cur.atoms[j].second, basis);
            for (size_t i = 0; i + 1 < rows; ++i) a[i][j] = f[i];
            a[rows - 1][j] = T::one(zero);
        }
        // Gaussian elimination for one kernel vector (k > rows guarantees one).
        std::vector<size_t> pivot_col;
        std::vector<char> is_pivot(k, 0);
        size_t r = 0;
        for (size_t c = 0; c < k && r < rows; ++c) {
            size_t best = r;
            for (size_t i = r; i < rows; ++i)
                if (T::abs(a[best][c]) < T::abs(a[i][c])) best = i;
            if (!T::is_positive(T::abs(a[best][c]), eps)) continue;
            std::swap(a[r], a[best]);
            for (size_t i = 0; i < rows; ++i) {
                if (i == r) continue;
                if (!T::is_positive(T::abs(a[i][c]), zero)) continue;
                S f = a[i][c] / a[r][c];
                for (size_t j = c; j < k; ++j) a[i][j] = a[i][j] - f * a[r][j];
            }
            pivot_col.push_back(c);
            is_pivot[c] = 1;
            ++r;
        }
        size_t free_col = k;
        for (size_t c = 0; c < k; ++c)
            if (!is_pivot[c] && free_col == k) free_col = c;
        if (free_col == k) throw solver_error("no kernel direction found");
        std::vector<S> z(k, zero);
        z[free_col] = T::one(zero);
        for (size_t i = 0; i < pivot_col.size(); ++i) {
            size_t c = pivot_col[i];
            z[c] = -(a[i][free_col] / a[i][c]);
        }
        // The all-ones row forces sum(z) = 0, so some entry is positive after
        // an optional sign flip; move until the first weight hits zero.
        bool has_pos = false;
        for (const auto& v : z) has_pos = has_pos || T::is_positive(v, zero);
        if (!has_pos)
            for (auto& v : z) v = -v;
        size_t drop = k;
        std::optional<S> best_t;
        for (size_t j = 0; j < k; ++j) {
            if (!T::is_positive(z[j], zero)) continue;
            S ratio = cur.weights[j] / z[j];
            if (!best_t || ratio < *best_t) {
                best_t = ratio;
                drop = j;
            }
        }
        if (drop == k) throw solver_error("kernel direction had no positive entry");
        WeightedAtoms<S> next;
        for (size_t j = 0; j < k; ++j) {
            if (j == drop) continue;
            S w = cur.weights[j] - *best_t * z[j];
            if (T::is_negative(w, eps)) throw solver_error("negative weight during reduction");
            if (!T::is_positive(w, eps)) continue;  // collapsed atoms drop out too
            next.atoms.push_back(cur.atoms[j]);
            next.weights.push_back(T::is_negative(w, zero) ? zero : w);
        }
        cur = std::move(next);
    }
    return cur;
}

template class FeasibilitySolver<Rational>;
template class FeasibilitySolver<BigReal>;
template FeasibilityOutcome<Rational> solve_feasibility(const std::vector<std::vector<Rational>>&,
                                                        const std::vector<Rational>&, const Rational&);
template FeasibilityOutcome<BigReal> solve_feasibility(const std::vector<std::vector<BigReal>>&,
                                                       const std::vector<BigReal>&, const BigReal&);
template Rational hull_residual_inf(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                    const std::vector<Rational>&);
template BigReal hull_residual_inf(const std::vector<std::vector<BigReal>>&, const std::vector<BigReal>&,
                                   const std::vector<BigReal>&);
template bool farkas_valid(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                           const Farkas<Rational>&, const Rational&);
template bool farkas_valid(const std::vector<std::vector<BigReal>>&, const std::vector<BigReal>&,
                           const Farkas<BigReal>&, const BigReal&);
template WeightedAtoms<Rational> caratheodory_reduce(const WeightedAtoms<Rational>&, const MomentBasis&);
template WeightedAtoms<BigReal> caratheodory_reduce(const WeightedAtoms<BigReal>&, const MomentBasis&);
template std::vector<Rational> measure_moments(const WeightedAtoms<Rational>&, const MomentBasis&);
template std::vector<BigReal> measure_moments(const WeightedAtoms<BigReal>&, const MomentBasis&);

}  // namespace tracehull
