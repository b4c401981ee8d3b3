#include "invmine/miner.hpp"

#include <algorithm>

namespace invmine {

namespace {

// Apriori join: frontier holds the frequent (k-1)-itemsets as ascending id
// lists; candidates are unions of pairs sharing their first k-2 items.
std::vector<std::vector<int>> join_level(const std::vector<std::vector<int>>& frontier) {
  std::vector<std::vector<int>> candidates;
  for (std::size_t a = 0; a < frontier.size(); ++a) {
    for (std::size_t b = a + 1; b < frontier.size(); ++b) {
      const auto& fa = frontier[a];
      const auto& fb = frontier[b];
      if (!std::equal(fa.begin(), fa.end() - 1, fb.begin(), fb.end() - 1)) continue;
      std::vector<int> cand(fa);
      cand.push_back(std::max(fa.back(), fb.back()));
      cand[cand.size() - 2] = std::min(fa.back(), fb.back());
      candidates.push_back(std::move(cand));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return candidates;
}

bool all_subsets_frequent(const std::vector<int>& cand,
                          const std::vector<std::vector<int>>& frontier) {
  std::vector<int> sub(cand.size() - 1);
  for (std::size_t drop = 0; drop < cand.size(); ++drop) {
    std::size_t w = 0;
    for (std::size_t r = 0; r < cand.size(); ++r)
      if (r != drop) sub[w++] = cand[r];
    if (!std::binary_search(frontier.begin(), frontier.end(), sub)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<ItemSet, long long>> mine_frequent(const TransactionDatabase& db,
                                                         long long minsup, int maxlen) {
  if (minsup < 0) throw InputError("minsup must be nonnegative");
  if (maxlen < 1 || maxlen > db.universe.size)
    throw InputError("maxlen must lie in [1, t]");
  const int t = db.universe.size;

  std::vector<std::pair<ItemSet, long long>> result;
  std::vector<std::vector<int>> frontier;
  for (int k = 0; k < t; ++k) {
    ItemSet s = ItemSet::from_items(t, {k});
    long long sup = support(s, db);
    if (sup >= minsup) frontier.push_back({k});
  }
  for (int level = 1; level <= maxlen && !frontier.empty(); ++level) {
    std::vector<std::vector<int>> next_frontier;
    for (const auto& items : frontier) {
      ItemSet s = ItemSet::from_items(t, items);
      long long sup = support(s, db);
      if (sup >= minsup) {
        result.emplace_back(std::move(s), sup);
        next_frontier.push_back(items);
      }
    }
    frontier = (level < maxlen) ? join_level(next_frontier) : std::vector<std::vector<int>>{};
    if (level < maxlen) {
      // prune candidates with an infrequent subset
      std::vector<std::vector<int>> pruned;
      for (auto& cand : frontier)
        if (all_subsets_frequent(cand, next_frontier)) pruned.push_back(std::move(cand));
      frontier = std::move(pruned);
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.cardinality() != b.first.cardinality())
      return a.first.cardinality() < b.first.cardinality();
    return a.first < b.first;
  });
  return result;
}

ConstraintSet extract_constraints(const TransactionDatabase& db, long long minsup, int maxlen) {
  auto mined = mine_frequent(db, minsup, maxlen);
  if (mined.empty()) throw InputError("mining produced no constraints (need m >= 1)");
  ConstraintSet cs;
  cs.universe = db.universe;
  cs.n = db.size();
  for (auto& [itemset, sup] : mined)
    cs.constraints.push_back(SupportConstraint{std::move(itemset), sup});
  cs.validate();
  return cs;
}

}  // namespace invmine
