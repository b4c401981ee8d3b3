#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "invmine/core.hpp"

namespace invmine {

enum class VarKind { U, X, XX, Y, Z };

/// Names one model column. Indices are 1-based as in the formulation:
/// i in [1,m], j in [1,m+1], k in [1,t].
struct VarRef {
  VarKind kind;
  int i = 0;
  int j = 0;
  int k = 0;

  std::string name() const;
};

enum class Relation { LE, EQ, GE };

struct LinearRow {
  std::vector<std::pair<int, double>> coefficients;  // (column index, coefficient)
  Relation relation = Relation::LE;
  double rhs = 0.0;
};

struct LpModel {
  std::vector<VarRef> columns;
  std::vector<double> lower;  // per-column lower bound
  std::vector<double> upper;  // per-column upper bound (+inf allowed)
  std::vector<LinearRow> rows;
  std::vector<double> objective;  // minimization

  int column_count() const { return static_cast<int>(columns.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }
};

/// Fixed column layout: all u_{j,k} row-major, then X_j, then x_{i,j}
/// row-major, then y_{i,j} row-major, then z_i.
struct ModelLayout {
  int m = 0;
  int t = 0;

  int u(int j, int k) const { return (j - 1) * t + (k - 1); }
  int X(int j) const { return t * (m + 1) + (j - 1); }
  int xx(int i, int j) const { return t * (m + 1) + (m + 1) + (i - 1) * (m + 1) + (j - 1); }
  int y(int i, int j) const {
    return t * (m + 1) + (m + 1) + m * (m + 1) + (i - 1) * (m + 1) + (j - 1);
  }
  int z(int i) const { return t * (m + 1) + (m + 1) + 2 * m * (m + 1) + (i - 1); }
  int columns() const { return t * (m + 1) + 2 * m * m + 4 * m + 1; }
};

/// Builds the continuous relaxation of the synthesis integer program:
/// subset-indicator rows coupling y_{i,j} to the inner product of chi(J_j)
/// and chi(I_i), product-linearization rows coupling x_{i,j} to X_j * y_{i,j},
/// the count and support coupling rows, and objective sum of z_i. Bound rows
/// (u <= 1, x >= 0, z >= 0, X >= 0) are emitted explicitly so that the row
/// count is exactly 6m^2 + 9m + mt + t + 2.
LpModel build_relaxed_lp(const ConstraintSet& cs, bool validate = true);

ModelLayout layout_of(const ConstraintSet& cs);

/// True iff the assignment satisfies every row exactly, u and y are binary,
/// and X, z, x are nonnegative integers.
bool integral_feasible(const ConstraintSet& cs, const std::vector<double>& assignment);

/// Plain-text dump, one row per line: `<coef>*<name> ... <rel> <rhs>`.
void dump_lp(std::ostream& out, const LpModel& model);

}  // namespace invmine
