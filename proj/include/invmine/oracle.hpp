#pragma once

#include <functional>
#include <vector>

#include "invmine/core.hpp"

namespace invmine {

struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // unordered pairs, no loops/duplicates

  void validate() const;
};

enum class DeviationModel { Overshoot, Absolute };

struct OracleResult {
  bool feasible = false;      // overshoot model can have no feasible count vector
  long long optimum = 0;      // minimal objective over all count vectors
  std::vector<long long> witness;  // counts over all 2^t itemset types, lex smallest optimum
};

/// Exhaustive ground truth over every database shape: all count vectors over
/// the 2^t itemset types summing to n. Guarded to t <= 4 and n <= 10.
OracleResult brute_force_optimum(const ConstraintSet& cs, DeviationModel model);

/// Visits every count vector over the 2^t itemset types that sums to n.
/// Type j is the itemset whose characteristic array is the binary digits of j.
void for_each_count_vector(int t, long long n,
                           const std::function<void(const std::vector<long long>&)>& fn);

ItemSet itemset_of_type(int t, int type);

/// The 3-colorability reduction: 3|V| items (R_v, G_v, B_v per vertex),
/// m = 6|V| + 3|E| constraints, n = k0 * m^2.
ConstraintSet reduce_3coloring(const Graph& g, long long k0);

enum class Color { R = 0, G = 1, B = 2 };

/// Database of roughly n/3 copies each of the three cyclic recolorings of a
/// proper coloring, padded/trimmed on the first transaction type to total n.
TransactionDatabase coloring_to_database(const Graph& g, const std::vector<Color>& coloring,
                                         long long n);

}  // namespace invmine
