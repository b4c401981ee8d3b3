#pragma once

#include <optional>
#include <vector>

#include "invmine/simplex.hpp"

namespace invmine {

/// Integer candidate solution: itemsets J_1..J_{m+1} with duplicate counts.
/// The y/x matrices and the per-constraint deviations are always re-derived
/// from (itemsets, counts), so the type invariants hold by construction.
struct RoundedSolution {
  std::vector<ItemSet> itemsets;          // J_j, size m+1
  std::vector<long long> counts;          // X-bar_j, sums to n
  std::vector<std::vector<int>> ybar;     // m x (m+1), 1 iff I_i subset of J_j
  std::vector<std::vector<long long>> xbar;  // xbar = counts[j] * ybar
  std::vector<long long> zbar;            // signed: sum_j xbar - s_i
  double realized_objective = 0.0;        // sum of signed zbar
  // Raw Bernoulli outcomes of the randomized methods, before the union step
  // re-derives coverage; empty for the deterministic methods.
  std::vector<std::vector<int>> draws;
};

/// Probability state for the conditional-expectation machinery: which x-bar
/// entries are already fixed, and the current Prob[I_i subset J_j] table.
struct ProbabilityContext {
  const ConstraintSet* constraints = nullptr;
  std::vector<long long> counts;               // X-bar_j
  std::vector<std::vector<double>> xstar;      // m x (m+1) relaxed x values
  // -1 undetermined, 0 fixed to zero, 1 fixed to X-bar_j
  std::vector<std::vector<int>> determined;
  int refine_rounds = 2;
  std::vector<std::vector<double>> probs;      // filled by refresh()

  void refresh();
};

struct DerandStep {
  int i = 0;
  int j = 0;
  double expectation_zero = 0.0;
  double expectation_committed = 0.0;
  int chosen = 0;  // 0 or 1 (committed)
};

using DerandLog = std::vector<DerandStep>;

/// Rounds fractional counts to nonnegative integers summing to n, moving a
/// unit at a time at seeded random indices.
std::vector<long long> balance_counts(const std::vector<double>& xstar_counts, long long n,
                                      std::uint64_t seed);

RoundedSolution round_method1(const LpSolution& ostar, const ConstraintSet& cs,
                              std::uint64_t seed);
RoundedSolution round_method2(const LpSolution& ostar, const ConstraintSet& cs,
                              std::uint64_t seed);
RoundedSolution randomized_round_x(const LpSolution& ostar, const ConstraintSet& cs,
                                   std::uint64_t seed);
RoundedSolution randomized_round_u(const LpSolution& ostar, const ConstraintSet& cs,
                                   std::uint64_t seed);
RoundedSolution derandomize_x(const LpSolution& ostar, const ConstraintSet& cs,
                              int refine_rounds, std::uint64_t seed, DerandLog* log = nullptr);
RoundedSolution derandomize_u(const LpSolution& ostar, const ConstraintSet& cs,
                              std::uint64_t seed, DerandLog* log = nullptr);

/// Approximate Prob[I_i subset J_j] for an undetermined (or zero-fixed) entry:
/// the x*/X-bar base plus the minimal-cover correction, clamped to [0,1].
double prob_subset(const ProbabilityContext& ctx, int i, int j);

/// Sum over constraints of E(z_i) = sum_j X-bar_j Prob[I_i subset J_j] - s_i
/// (signed; may be negative).
double expected_objective(const ProbabilityContext& ctx);

/// Materializes the solution: counts[j] copies of J_j, tids 1..n in j order.
TransactionDatabase build_database(const RoundedSolution& sol, const ItemUniverse& universe);

enum class RoundingMethod { RoundU, RoundX, RandomX, RandomU, DerandomX, DerandomU };

RoundedSolution apply_rounding(RoundingMethod method, const LpSolution& ostar,
                               const ConstraintSet& cs, std::uint64_t seed, int refine_rounds);

}  // namespace invmine
