#include "invmine/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "invmine/rational.hpp"

namespace invmine {

namespace {

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool is_zero(double v) { return std::abs(v) < 1e-12; }
  static double pivot_eps() { return 1e-9; }
  // Phase-1 pricing tolerance: exact zero stalls on reduced-cost noise.
  static double price_eps() { return 1e-9; }
};

template <>
struct ScalarTraits<Rational> {
  static Rational from_double(double v) { return rational_from_double(v); }
  static double to_double(const Rational& v) { return v.value(); }
  static bool is_zero(const Rational& v) { return v.num == 0; }
  static Rational pivot_eps() { return Rational(0, 1); }
  static Rational price_eps() { return Rational(0, 1); }
};

enum ColState : std::uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

/// Bounds-folded problem in shifted coordinates: every variable lives in
/// [0, range] (range may be absent), rows are the remaining multi-variable rows.
template <class Scalar>
struct FoldedProblem {
  int ncols = 0;
  std::vector<Scalar> lower;  // original lower bound (shift)
  std::vector<Scalar> range;
  std::vector<bool> has_range;
  std::vector<LinearRow> rows;  // coefficients reference structural columns
  std::vector<Scalar> cost;
  bool bound_infeasible = false;
};

template <class Scalar>
FoldedProblem<Scalar> fold_bounds(const LpModel& model) {
  using T = ScalarTraits<Scalar>;
  FoldedProblem<Scalar> p;
  p.ncols = model.column_count();
  std::vector<double> lo = model.lower;
  std::vector<double> hi = model.upper;
  for (const auto& row : model.rows) {
    if (row.coefficients.size() != 1) {
      p.rows.push_back(row);
      continue;
    }
    const auto [col, a] = row.coefficients.front();
    if (a == 0.0) {
      // 0 rel rhs: keep as a regular row so infeasible degenerate input is caught
      p.rows.push_back(row);
      continue;
    }
    const double bound = row.rhs / a;
    Relation rel = row.relation;
    if (a < 0.0 && rel != Relation::EQ)
      rel = (rel == Relation::LE) ? Relation::GE : Relation::LE;
    if (rel == Relation::LE || rel == Relation::EQ) hi[col] = std::min(hi[col], bound);
    if (rel == Relation::GE || rel == Relation::EQ) lo[col] = std::max(lo[col], bound);
  }
  for (int c = 0; c < p.ncols; ++c) {
    if (!std::isfinite(lo[c])) throw InputError("solver requires finite lower bounds");
    if (lo[c] > hi[c]) p.bound_infeasible = true;
    p.lower.push_back(T::from_double(lo[c]));
    if (std::isfinite(hi[c])) {
      p.range.push_back(T::from_double(hi[c]) - p.lower.back());
      p.has_range.push_back(true);
    } else {
      p.range.push_back(T::from_double(0.0));
      p.has_range.push_back(false);
    }
  }
  p.cost.resize(p.ncols);
  for (int c = 0; c < p.ncols; ++c) p.cost[c] = T::from_double(model.objective[c]);
  return p;
}

template <class Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using T = ScalarTraits<Scalar>;

  explicit Tableau(const FoldedProblem<Scalar>& p) : p_(p) {
    const int nrows = static_cast<int>(p.rows.size());
    int nslack = 0;
    for (const auto& row : p.rows)
      if (row.relation != Relation::EQ) ++nslack;
    // artificials: one per row whose natural slack cannot start basic
    nart_ = 0;
    ncols_total_ = p.ncols + nslack;  // artificial columns appended after
    // First pass to learn which rows need artificials.
    std::vector<int> slack_col(nrows, -1);
    std::vector<bool> needs_art(nrows, false);
    std::vector<Scalar> shifted_rhs(nrows);
    std::vector<int> row_sign(nrows, 1);
    int next_slack = p.ncols;
    const Scalar zero = T::from_double(0.0);
    for (int r = 0; r < nrows; ++r) {
      const auto& row = p.rows[r];
      Scalar b = T::from_double(row.rhs);
      for (const auto& [col, a] : row.coefficients) b -= T::from_double(a) * p.lower[col];
      Relation rel = row.relation;
      int sign = 1;
      // Normalize to rhs >= 0.
      if (b < zero) {
        sign = -1;
        b = -b;
        if (rel == Relation::LE)
          rel = Relation::GE;
        else if (rel == Relation::GE)
          rel = Relation::LE;
      }
      row_sign[r] = sign;
      shifted_rhs[r] = b;
      if (rel != Relation::EQ) slack_col[r] = next_slack++;
      // LE with nonnegative rhs starts on its slack; GE and EQ need an artificial.
      needs_art[r] = !(rel == Relation::LE);
      if (needs_art[r]) ++nart_;
      normalized_rel_.push_back(rel);
    }
    art_begin_ = ncols_total_;
    ncols_total_ += nart_;

    A_.setZero(nrows, ncols_total_);
    b_.resize(nrows);
    basis_.resize(nrows);
    state_.assign(ncols_total_, kAtLower);
    range_.assign(ncols_total_, zero);
    has_range_.assign(ncols_total_, false);
    forbidden_.assign(ncols_total_, false);
    for (int c = 0; c < p.ncols; ++c) {
      range_[c] = p.range[c];
      has_range_[c] = p.has_range[c];
    }

    int next_art = art_begin_;
    for (int r = 0; r < nrows; ++r) {
      const Scalar sign = T::from_double(static_cast<double>(row_sign[r]));
      for (const auto& [col, a] : p.rows[r].coefficients)
        A_(r, col) += sign * T::from_double(a);
      b_[r] = shifted_rhs[r];
      if (slack_col[r] >= 0)
        A_(r, slack_col[r]) = normalized_rel_[r] == Relation::LE ? T::from_double(1.0)
                                                                 : T::from_double(-1.0);
      if (needs_art[r]) {
        const int art = next_art++;
        A_(r, art) = T::from_double(1.0);
        basis_[r] = art;
      } else {
        basis_[r] = slack_col[r];
      }
      state_[basis_[r]] = kBasic;
    }
  }

  LpStatus run(const FoldedProblem<Scalar>& p, double feas_tol, double opt_tol,
               long long max_iterations) {
    const Scalar zero = T::from_double(0.0);
    iterations_ = 0;
    max_iterations_ = max_iterations;

    // Phase 1: minimize the sum of artificials.
    std::vector<Scalar> phase1_cost(ncols_total_, zero);
    for (int c = art_begin_; c < ncols_total_; ++c) phase1_cost[c] = T::from_double(1.0);
    reset_costs(phase1_cost);
    LpStatus st = iterate(T::price_eps());
    if (st == LpStatus::IterationLimit) return st;
    if (T::to_double(objective_) > feas_tol) return LpStatus::Infeasible;
    for (int c = art_begin_; c < ncols_total_; ++c) forbidden_[c] = true;
    drive_out_artificials();

    // Phase 2: the real objective.
    std::vector<Scalar> phase2_cost(ncols_total_, zero);
    for (int c = 0; c < p.ncols; ++c) phase2_cost[c] = p.cost[c];
    reset_costs(phase2_cost);
    return iterate(T::from_double(opt_tol));
  }

  Scalar value_of(int col, int* basis_row_cache) const {
    if (state_[col] == kBasic) return b_[basis_row_cache[col]];
    if (state_[col] == kAtUpper) return range_[col];
    return ScalarTraits<Scalar>::from_double(0.0);
  }

  void extract(const FoldedProblem<Scalar>& p, std::vector<Scalar>& out) const {
    std::vector<int> row_of(ncols_total_, -1);
    for (int r = 0; r < static_cast<int>(basis_.size()); ++r) row_of[basis_[r]] = r;
    out.resize(p.ncols);
    for (int c = 0; c < p.ncols; ++c) {
      Scalar v = p.lower[c];
      if (state_[c] == kBasic)
        v += b_[row_of[c]];
      else if (state_[c] == kAtUpper)
        v += range_[c];
      out[c] = v;
    }
  }

 private:
  void reset_costs(const std::vector<Scalar>& cost) {
    const Scalar zero = T::from_double(0.0);
    dj_.resize(ncols_total_);
    for (int c = 0; c < ncols_total_; ++c) dj_[c] = cost[c];
    objective_ = zero;
    for (int r = 0; r < static_cast<int>(basis_.size()); ++r) {
      const Scalar cb = cost[basis_[r]];
      if (!T::is_zero(cb)) {
        dj_ -= cb * A_.row(r);
        objective_ += cb * b_[r];
      }
    }
    for (int c = 0; c < ncols_total_; ++c)
      if (state_[c] == kAtUpper && !T::is_zero(cost[c])) objective_ += cost[c] * range_[c];
  }

  // Pivot basic artificials out where their row allows it; rows whose
  // structural part vanished are inert afterwards and can keep a zero-valued
  // artificial basic.
  void drive_out_artificials() {
    for (int r = 0; r < static_cast<int>(basis_.size()); ++r) {
      if (basis_[r] < art_begin_) continue;
      int enter = -1;
      for (int c = 0; c < art_begin_; ++c) {
        if (state_[c] == kBasic) continue;
        if (!(abs_of(A_(r, c)) <= T::pivot_eps())) {
          enter = c;
          break;
        }
      }
      if (enter >= 0) pivot(r, enter, /*entering_value=*/value_at_bound(enter));
    }
  }

  static Scalar abs_of(const Scalar& v) {
    using std::abs;
    return abs(v);
  }

  Scalar value_at_bound(int col) const {
    return state_[col] == kAtUpper ? range_[col] : T::from_double(0.0);
  }

  LpStatus iterate(Scalar opt_eps) {
    const Scalar zero = T::from_double(0.0);
    int degenerate_streak = 0;
    bool bland = false;
    while (true) {
      if (max_iterations_ > 0 && iterations_ >= max_iterations_)
        return LpStatus::IterationLimit;
      // Pricing.
      int enter = -1;
      Scalar best = opt_eps;
      for (int c = 0; c < ncols_total_; ++c) {
        if (state_[c] == kBasic || forbidden_[c]) continue;
        const Scalar viol = state_[c] == kAtLower ? -dj_[c] : dj_[c];
        if (viol > best) {
          enter = c;
          if (bland) break;
          best = viol;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      ++iterations_;

      const int dir = state_[enter] == kAtLower ? 1 : -1;
      const Scalar sdir = T::from_double(static_cast<double>(dir));
      // Ratio test over basic limits plus the entering variable's own bound flip.
      bool limited = false;
      bool flip = false;
      bool leave_to_upper = false;
      int leave_row = -1;
      Scalar step = zero;
      if (has_range_[enter]) {
        limited = true;
        flip = true;
        step = range_[enter];
      }
      const int nrows = static_cast<int>(basis_.size());
      for (int r = 0; r < nrows; ++r) {
        const Scalar a = sdir * A_(r, enter);
        Scalar cand;
        bool to_upper;
        if (a > T::pivot_eps()) {
          cand = b_[r] / a;
          to_upper = false;
        } else if (a < -T::pivot_eps() && has_range_[basis_[r]]) {
          cand = (range_[basis_[r]] - b_[r]) / (-a);
          to_upper = true;
        } else {
          continue;
        }
        if (cand < zero) cand = zero;  // numerical drift below a bound
        const bool better =
            !limited || cand < step ||
            (bland && !(step < cand) && leave_row >= 0 && basis_[r] < basis_[leave_row]);
        if (better) {
          limited = true;
          flip = false;
          leave_row = r;
          leave_to_upper = to_upper;
          step = cand;
        }
      }
      if (!limited) return LpStatus::Unbounded;

      if (!(step > T::pivot_eps())) {
        if (++degenerate_streak > 64) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      objective_ += dj_[enter] * sdir * step;
      if (flip) {
        b_ -= (sdir * step) * A_.col(enter);
        state_[enter] = dir > 0 ? kAtUpper : kAtLower;
        continue;
      }
      // Basis change.
      b_ -= (sdir * step) * A_.col(enter);
      const int leaving = basis_[leave_row];
      state_[leaving] = leave_to_upper ? kAtUpper : kAtLower;
      const Scalar enter_value =
          dir > 0 ? step : range_[enter] - step;
      pivot_rowops(leave_row, enter);
      basis_[leave_row] = enter;
      state_[enter] = kBasic;
      b_[leave_row] = enter_value;
    }
  }

  // Degenerate pivot used when removing artificials: entering stays at its
  // current value, only the basis representation changes.
  void pivot(int row, int enter, Scalar enter_value) {
    const int leaving = basis_[row];
    // Leaving artificial is at value b_[row] (zero after a successful phase 1).
    state_[leaving] = kAtLower;
    const Scalar old_b = b_[row];
    pivot_rowops(row, enter);
    basis_[row] = enter;
    state_[enter] = kBasic;
    // b_ untouched elsewhere: values did not move, only the labelling did.
    b_[row] = old_b + enter_value;
  }

  void pivot_rowops(int prow, int enter) {
    const Scalar piv = A_(prow, enter);
    A_.row(prow) /= piv;
    const RowVector pivot_row = A_.row(prow);
    typename Tableau::Vector factors = A_.col(enter);
    factors[prow] = T::from_double(0.0);
    A_.noalias() -= factors * pivot_row;
    const Scalar dfac = dj_[enter];
    if (!T::is_zero(dfac)) dj_ -= dfac * pivot_row;
  }

  const FoldedProblem<Scalar>& p_;
  Matrix A_;
  Vector b_;
  RowVector dj_;
  Scalar objective_{};
  std::vector<int> basis_;
  std::vector<std::uint8_t> state_;
  std::vector<Scalar> range_;
  std::vector<bool> has_range_;
  std::vector<bool> forbidden_;
  std::vector<Relation> normalized_rel_;
  int ncols_total_ = 0;
  int art_begin_ = 0;
  int nart_ = 0;
  long long iterations_ = 0;
  long long max_iterations_ = 0;
};

template <class Scalar>
LpSolution solve_with(const LpModel& model, const SolverConfig& config) {
  using T = ScalarTraits<Scalar>;
  FoldedProblem<Scalar> p = fold_bounds<Scalar>(model);
  LpSolution out;
  if (p.bound_infeasible) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  long long max_iter = config.max_iterations;
  if (max_iter <= 0)
    max_iter = 10LL * (model.column_count() + model.row_count());
  Tableau<Scalar> tableau(p);
  out.status = tableau.run(p, config.feasibility_tolerance, config.optimality_tolerance, max_iter);
  if (out.status == LpStatus::Optimal) {
    std::vector<Scalar> values;
    tableau.extract(p, values);
    out.values.resize(model.column_count());
    out.objective = 0.0;
    for (int c = 0; c < model.column_count(); ++c) {
      out.values[c] = T::to_double(values[c]);
      out.objective += model.objective[c] * out.values[c];
    }
  }
  return out;
}

}  // namespace

LpSolution solve(const LpModel& model, const SolverConfig& config) {
  if (config.feasibility_tolerance <= 0.0 || config.optimality_tolerance <= 0.0)
    throw InputError("solver tolerances must be positive");
  LpSolution result = solve_with<double>(model, config);
  if (result.status == LpStatus::Infeasible && model.column_count() <= 12) {
    // Exact re-verification at tiny scale; the rational verdict wins.
    try {
      LpSolution exact = solve_with<Rational>(model, config);
      if (exact.status != LpStatus::IterationLimit) return exact;
    } catch (const ScaleError&) {
      // overflow in exact arithmetic: keep the floating-point verdict
    }
  }
  return result;
}

}  // namespace invmine
