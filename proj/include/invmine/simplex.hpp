#pragma once

#include <Eigen/Core>

#include "invmine/formulation.hpp"

namespace invmine {

struct SolverConfig {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  long long max_iterations = 0;  // 0 selects 10 * (columns + rows)
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd values;  // one entry per model column, in column order
  double objective = 0.0;
};

/// Two-phase dense simplex with bounded variables and a Bland anti-cycling
/// fallback. Single-variable rows are folded into column bounds before the
/// tableau is built. Infeasibility verdicts on models with at most 12 columns
/// are re-verified in exact rational arithmetic. Deterministic for fixed input.
LpSolution solve(const LpModel& model, const SolverConfig& config = {});

}  // namespace invmine
