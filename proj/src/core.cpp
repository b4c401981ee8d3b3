#include "invmine/core.hpp"

#include <algorithm>
#include <set>

namespace invmine {

namespace {

void require_same_universe(const ItemSet& a, const ItemSet& b) {
  if (a.universe_size() != b.universe_size())
    throw DimensionError("itemsets belong to different universes");
}

}  // namespace

void ConstraintSet::validate() const {
  if (universe.size < 1) throw InputError("constraint set needs a nonempty universe");
  if (n < 1) throw InputError("constraint set target size n must be >= 1");
  if (constraints.empty()) throw InputError("constraint set must contain at least one constraint");
  std::set<ItemSet> seen;
  for (const auto& c : constraints) {
    if (c.itemset.universe_size() != universe.size)
      throw DimensionError("constraint itemset universe mismatch");
    if (c.itemset.empty()) throw InputError("empty constraint itemset");
    if (c.support < 0 || c.support > n)
      throw InputError("constraint support must lie in [0, n]");
    if (!seen.insert(c.itemset).second)
      throw InputError("duplicate constraint itemset");
  }
}

int inner_product(const ItemSet& a, const ItemSet& b) {
  require_same_universe(a, b);
  int sum = 0;
  for (int k = 0; k < a.universe_size(); ++k) sum += a.chi()[k] * b.chi()[k];
  return sum;
}

bool is_subset(const ItemSet& a, const ItemSet& b) {
  return inner_product(a, b) == a.cardinality();
}

long long support(const ItemSet& itemset, const TransactionDatabase& db) {
  if (itemset.universe_size() != db.universe.size)
    throw DimensionError("itemset universe does not match database universe");
  long long count = 0;
  for (const auto& row : db.rows)
    if (is_subset(itemset, row.items)) ++count;
  return count;
}

Rational frequency(const ItemSet& itemset, const TransactionDatabase& db) {
  if (db.rows.empty()) throw InputError("frequency undefined on an empty database");
  return Rational(support(itemset, db), db.size());
}

SynthesisReport deviation_report(const TransactionDatabase& db, const ConstraintSet& cs,
                                 double lp_objective) {
  if (db.universe.size != cs.universe.size)
    throw DimensionError("database universe does not match constraint set universe");
  SynthesisReport report;
  report.n_target = cs.n;
  report.n_actual = db.size();
  report.lp_objective = lp_objective;
  for (const auto& c : cs.constraints) {
    ConstraintDeviation d;
    d.itemset = c.itemset;
    d.target = c.support;
    d.actual = support(c.itemset, db);
    d.deviation = d.actual - d.target;
    report.sum_abs_deviation += std::llabs(d.deviation);
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::llabs(d.deviation));
    report.per_constraint.push_back(std::move(d));
  }
  return report;
}

}  // namespace invmine
