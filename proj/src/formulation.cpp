#include "invmine/formulation.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace invmine {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string VarRef::name() const {
  switch (kind) {
    case VarKind::U:
      return "u_" + std::to_string(j) + "_" + std::to_string(k);
    case VarKind::X:
      return "X_" + std::to_string(j);
    case VarKind::XX:
      return "xx_" + std::to_string(i) + "_" + std::to_string(j);
    case VarKind::Y:
      return "y_" + std::to_string(i) + "_" + std::to_string(j);
    case VarKind::Z:
      return "z_" + std::to_string(i);
  }
  return "?";
}

ModelLayout layout_of(const ConstraintSet& cs) {
  return ModelLayout{cs.m(), cs.universe.size};
}

LpModel build_relaxed_lp(const ConstraintSet& cs, bool validate) {
  if (validate) cs.validate();
  const int m = cs.m();
  const int t = cs.universe.size;
  const ModelLayout L{m, t};
  const double n = static_cast<double>(cs.n);

  LpModel model;
  model.columns.reserve(L.columns());
  for (int j = 1; j <= m + 1; ++j)
    for (int k = 1; k <= t; ++k) model.columns.push_back({VarKind::U, 0, j, k});
  for (int j = 1; j <= m + 1; ++j) model.columns.push_back({VarKind::X, 0, j, 0});
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m + 1; ++j) model.columns.push_back({VarKind::XX, i, j, 0});
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m + 1; ++j) model.columns.push_back({VarKind::Y, i, j, 0});
  for (int i = 1; i <= m; ++i) model.columns.push_back({VarKind::Z, i, 0, 0});

  model.lower.assign(model.columns.size(), 0.0);
  model.upper.assign(model.columns.size(), kInf);
  model.objective.assign(model.columns.size(), 0.0);
  for (int j = 1; j <= m + 1; ++j)
    for (int k = 1; k <= t; ++k) model.upper[L.u(j, k)] = 1.0;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m + 1; ++j) model.upper[L.y(i, j)] = 1.0;
  for (int i = 1; i <= m; ++i) model.objective[L.z(i)] = 1.0;

  // Subset indicator rows: |I_i| y_{i,j} <= sum_{k in I_i} u_{j,k} <= y_{i,j} + |I_i| - 1.
  for (int i = 1; i <= m; ++i) {
    const auto items = cs.constraints[i - 1].itemset.items();
    const double card = static_cast<double>(items.size());
    for (int j = 1; j <= m + 1; ++j) {
      LinearRow lower_row;
      lower_row.coefficients.push_back({L.y(i, j), card});
      for (int item : items) lower_row.coefficients.push_back({L.u(j, item + 1), -1.0});
      lower_row.relation = Relation::LE;
      lower_row.rhs = 0.0;
      model.rows.push_back(std::move(lower_row));

      LinearRow upper_row;
      for (int item : items) upper_row.coefficients.push_back({L.u(j, item + 1), 1.0});
      upper_row.coefficients.push_back({L.y(i, j), -1.0});
      upper_row.relation = Relation::LE;
      upper_row.rhs = card - 1.0;
      model.rows.push_back(std::move(upper_row));
    }
  }
  // u upper-bound rows, tallied with the subset rows.
  for (int j = 1; j <= m + 1; ++j)
    for (int k = 1; k <= t; ++k)
      model.rows.push_back({{{L.u(j, k), 1.0}}, Relation::LE, 1.0});

  // Product linearization (x = X * y over 0 <= X <= n, y binary):
  // x - n y <= 0, x - X <= 0, n y + X - x <= n, x >= 0.
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m + 1; ++j) {
      model.rows.push_back({{{L.xx(i, j), 1.0}, {L.y(i, j), -n}}, Relation::LE, 0.0});
      model.rows.push_back({{{L.xx(i, j), 1.0}, {L.X(j), -1.0}}, Relation::LE, 0.0});
      model.rows.push_back(
          {{{L.y(i, j), n}, {L.X(j), 1.0}, {L.xx(i, j), -1.0}}, Relation::LE, n});
      model.rows.push_back({{{L.xx(i, j), 1.0}}, Relation::GE, 0.0});
    }
  }

  // Count and support coupling.
  {
    LinearRow total;
    for (int j = 1; j <= m + 1; ++j) total.coefficients.push_back({L.X(j), 1.0});
    total.relation = Relation::EQ;
    total.rhs = n;
    model.rows.push_back(std::move(total));
  }
  for (int i = 1; i <= m; ++i) {
    LinearRow row;
    for (int j = 1; j <= m + 1; ++j) row.coefficients.push_back({L.xx(i, j), 1.0});
    row.coefficients.push_back({L.z(i), -1.0});
    row.relation = Relation::EQ;
    row.rhs = static_cast<double>(cs.constraints[i - 1].support);
    model.rows.push_back(std::move(row));
  }

  // Nonnegativity rows for z and X, tallied with the coupling rows.
  for (int i = 1; i <= m; ++i)
    model.rows.push_back({{{L.z(i), 1.0}}, Relation::GE, 0.0});
  for (int j = 1; j <= m + 1; ++j)
    model.rows.push_back({{{L.X(j), 1.0}}, Relation::GE, 0.0});

  return model;
}

bool integral_feasible(const ConstraintSet& cs, const std::vector<double>& assignment) {
  const LpModel model = build_relaxed_lp(cs);
  if (static_cast<int>(assignment.size()) != model.column_count())
    throw DimensionError("assignment dimension does not match model");

  const ModelLayout L = layout_of(cs);
  for (int c = 0; c < model.column_count(); ++c) {
    const double v = assignment[c];
    if (v != std::round(v)) return false;
    const VarRef ref = model.columns[c];
    if (ref.kind == VarKind::U || ref.kind == VarKind::Y) {
      if (v != 0.0 && v != 1.0) return false;
    } else if (v < 0.0) {
      return false;
    }
  }
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    for (const auto& [col, coef] : row.coefficients) lhs += coef * assignment[col];
    switch (row.relation) {
      case Relation::LE:
        if (lhs > row.rhs) return false;
        break;
      case Relation::EQ:
        if (lhs != row.rhs) return false;
        break;
      case Relation::GE:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  // Integrality of the y indicator against the strict definition.
  for (int i = 1; i <= cs.m(); ++i)
    for (int j = 1; j <= cs.m() + 1; ++j)
      if (assignment[L.xx(i, j)] != assignment[L.X(j)] * assignment[L.y(i, j)]) return false;
  return true;
}

void dump_lp(std::ostream& out, const LpModel& model) {
  out << "minimize";
  for (int c = 0; c < model.column_count(); ++c)
    if (model.objective[c] != 0.0)
      out << " " << model.objective[c] << "*" << model.columns[c].name();
  out << "\n";
  for (const auto& row : model.rows) {
    bool first = true;
    for (const auto& [col, coef] : row.coefficients) {
      out << (first ? "" : " ") << coef << "*" << model.columns[col].name();
      first = false;
    }
    const char* rel = row.relation == Relation::LE   ? "<="
                      : row.relation == Relation::EQ ? "="
                                                     : ">=";
    out << " " << rel << " " << row.rhs << "\n";
  }
}

}  // namespace invmine
