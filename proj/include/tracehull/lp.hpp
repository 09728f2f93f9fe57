#pragma once

#include <optional>
#include <vector>

#include "tracehull/bigreal.hpp"
#include "tracehull/errors.hpp"
#include "tracehull/moments.hpp"
#include "tracehull/rational.hpp"

namespace tracehull {

// Scalar glue so the simplex can run in exact rationals or in wide floats.
template <typename S>
struct lp_scalar;

template <>
struct lp_scalar<Rational> {
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
    static Rational from_long(long v, const Rational&) { return Rational(v); }
    static Rational abs(const Rational& v) { return v.abs(); }
    static bool is_positive(const Rational& v, const Rational& tol) { return v > tol; }
    static bool is_negative(const Rational& v, const Rational& tol) { return v < -tol; }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static void submul(Rational& t, const Rational& f, const Rational& g) { t -= f * g; }
    static void div_in(Rational& t, const Rational& piv) { t /= piv; }
};

template <>
struct lp_scalar<BigReal> {
    static BigReal zero(const BigReal& like) { return BigReal(like.precision_digits()); }
    static BigReal one(const BigReal& like) { return BigReal::from_long(1, like.precision_digits()); }
    static BigReal from_long(long v, const BigReal& like) { return BigReal::from_long(v, like.precision_digits()); }
    static BigReal abs(const BigReal& v) { return v.abs(); }
    static bool is_positive(const BigReal& v, const BigReal& tol) { return v > tol; }
    static bool is_negative(const BigReal& v, const BigReal& tol) { return v < -tol; }
    static bool is_zero(const BigReal& v) { return v.is_zero(); }
    static void submul(BigReal& t, const BigReal& f, const BigReal& g) { t.submul_inplace(f, g); }
    static void div_in(BigReal& t, const BigReal& piv) { t.div_inplace(piv); }
};

// Dual evidence that the target is outside the hull of the columns: an
// affine functional a.col + b >= 0 on every column with a.target + b = -delta
// for some delta > 0.
template <typename S>
struct Farkas {
    std::vector<S> a;
    S b;
    S delta;
};

template <typename S>
struct FeasibilityOutcome {
    bool feasible = false;
    std::vector<S> weights;        // per input column; zero off the support
    std::optional<Farkas<S>> farkas;
    // certificate re-verified with strictly positive separation; duals from a
    // degenerate basis can fail this and need fresh columns instead
    bool farkas_strict = false;
    int iterations = 0;
};

// Decides "target in conv(columns)" by a phase-I simplex on the system
// [columns; 1] w = [target; 1], w >= 0. Entering is steepest-descent with a
// permanent switch to Bland's smallest-index rule after a degenerate stall,
// so termination stays guaranteed. Feasible outcomes carry weights whose
// residual is at most tol in every coordinate (exactly zero when
// S = Rational and tol = 0); infeasible outcomes carry a normalized Farkas
// certificate re-verified against every column before returning.
template <typename S>
FeasibilityOutcome<S> solve_feasibility(const std::vector<std::vector<S>>& columns,
                                        const std::vector<S>& target, const S& tol);

// Incremental form for exchange loops: columns can be appended between
// solves and the simplex resumes from the current basis (the artificial
// block of the tableau carries the basis inverse).
template <typename S>
class FeasibilitySolver {
  public:
    FeasibilitySolver(const std::vector<S>& target, const S& tol);
    // returns the column id used to index weights
    size_t add_column(const std::vector<S>& col);
    size_t column_count() const { return n_; }
    FeasibilityOutcome<S> solve();

  private:
    size_t m_;  // feature rows + normalization row
    size_t n_ = 0;
    std::vector<S> target_;
    S tol_, zero_, one_, eps_;
    std::vector<int> row_sign_;
    std::vector<std::vector<S>> columns_;  // originals, for re-verification
    std::vector<std::vector<S>> rows_;     // m_+1 rows: [artificial m_ | structural n_]
    std::vector<S> rhs_;                   // m_+1 entries; last is -(objective)
    std::vector<size_t> basis_;            // artificial k -> k, structural j -> m_ + j
    int total_iterations_ = 0;
};

// Independent recomputation of max_i |sum_j w_j col_j[i] - target[i]|.
template <typename S>
S hull_residual_inf(const std::vector<std::vector<S>>& columns, const std::vector<S>& weights,
                    const std::vector<S>& target);

// Checks the Farkas inequalities by direct evaluation.
template <typename S>
bool farkas_valid(const std::vector<std::vector<S>>& columns, const std::vector<S>& target,
                  const Farkas<S>& f, const S& tol);

// Weighted point set; weights nonnegative, summing to one.
template <typename S>
struct WeightedAtoms {
    std::vector<std::pair<S, S>> atoms;
    std::vector<S> weights;
};

// Rewrites the measure on at most d+1 atoms (d = basis dimension) with the
// same feature averages: repeatedly moves along a kernel direction of the
// lifted atom matrix until a weight hits zero. Exact when S = Rational.
template <typename S>
WeightedAtoms<S> caratheodory_reduce(const WeightedAtoms<S>& m, const MomentBasis& basis);

// Feature averages sum_i w_i f(atom_i) of a weighted atom set.
template <typename S>
std::vector<S> measure_moments(const WeightedAtoms<S>& m, const MomentBasis& basis);

extern template class FeasibilitySolver<Rational>;
extern template class FeasibilitySolver<BigReal>;
extern template FeasibilityOutcome<Rational> solve_feasibility(
    const std::vector<std::vector<Rational>>&, const std::vector<Rational>&, const Rational&);
extern template FeasibilityOutcome<BigReal> solve_feasibility(
    const std::vector<std::vector<BigReal>>&, const std::vector<BigReal>&, const BigReal&);
extern template Rational hull_residual_inf(const std::vector<std::vector<Rational>>&,
                                           const std::vector<Rational>&, const std::vector<Rational>&);
extern template BigReal hull_residual_inf(const std::vector<std::vector<BigReal>>&,
                                          const std::vector<BigReal>&, const std::vector<BigReal>&);
extern template bool farkas_valid(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                  const Farkas<Rational>&, const Rational&);
extern template bool farkas_valid(const std::vector<std::vector<BigReal>>&, const std::vector<BigReal>&,
                                  const Farkas<BigReal>&, const BigReal&);
extern template WeightedAtoms<Rational> caratheodory_reduce(const WeightedAtoms<Rational>&, const MomentBasis&);
extern template WeightedAtoms<BigReal> caratheodory_reduce(const WeightedAtoms<BigReal>&, const MomentBasis&);
extern template std::vector<Rational> measure_moments(const WeightedAtoms<Rational>&, const MomentBasis&);
extern template std::vector<BigReal> measure_moments(const WeightedAtoms<BigReal>&, const MomentBasis&);

}  // namespace tracehull
