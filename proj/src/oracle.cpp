#include "invmine/oracle.hpp"

#include <algorithm>
#include <set>

namespace invmine {

void Graph::validate() const {
  if (vertex_count < 0) throw InputError("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop");
    if (!seen.insert(std::minmax(u, v)).second) throw InputError("duplicate edge");
  }
}

ItemSet itemset_of_type(int t, int type) {
  ItemSet s(t);
  for (int k = 0; k < t; ++k)
    if (type & (1 << k)) s.set(k, true);
  return s;
}

void for_each_count_vector(int t, long long n,
                           const std::function<void(const std::vector<long long>&)>& fn) {
  const int types = 1 << t;
  std::vector<long long> counts(types, 0);
  const std::function<void(int, long long)> rec = [&](int type, long long remaining) {
    if (type == types - 1) {
      counts[type] = remaining;
      fn(counts);
      return;
    }
    for (long long c = 0; c <= remaining; ++c) {
      counts[type] = c;
      rec(type + 1, remaining - c);
    }
  };
  rec(0, n);
}

OracleResult brute_force_optimum(const ConstraintSet& cs, DeviationModel model) {
  cs.validate();
  const int t = cs.universe.size;
  const long long n = cs.n;
  if (t > 4 || n > 10)
    throw ScaleError("brute-force oracle is guarded to t <= 4 and n <= 10");
  const int m = cs.m();
  const int types = 1 << t;

  // containment[i][type]: does itemset type `type` contain constraint i?
  std::vector<std::vector<bool>> containment(m, std::vector<bool>(types));
  for (int i = 0; i < m; ++i)
    for (int type = 0; type < types; ++type)
      containment[i][type] = is_subset(cs.constraints[i].itemset, itemset_of_type(t, type));

  OracleResult best;
  for_each_count_vector(t, n, [&](const std::vector<long long>& counts) {
    long long objective = 0;
    for (int i = 0; i < m; ++i) {
      long long sup = 0;
      for (int type = 0; type < types; ++type)
        if (containment[i][type]) sup += counts[type];
      const long long dev = sup - cs.constraints[i].support;
      if (model == DeviationModel::Overshoot) {
        if (dev < 0) return;  // undershoot is infeasible in the overshoot model
        objective += dev;
      } else {
        objective += dev < 0 ? -dev : dev;
      }
    }
    if (!best.feasible || objective < best.optimum) {
      best.feasible = true;
      best.optimum = objective;
      best.witness = counts;
    }
  });
  return best;
}

namespace {

int color_item(int v, Color c) { return 3 * v + static_cast<int>(c); }

Color shift(Color c, int by) {
  return static_cast<Color>((static_cast<int>(c) + by) % 3);
}

// Nearest integer to n/3; exact ties cannot occur for integer n.
long long third_of(long long n) { return (n + 1) / 3; }

}  // namespace

ConstraintSet reduce_3coloring(const Graph& g, long long k0) {
  g.validate();
  if (k0 < 1) throw InputError("k0 must be positive");
  const long long m = 6LL * g.vertex_count + 3LL * static_cast<long long>(g.edges.size());
  ConstraintSet cs;
  cs.universe = ItemUniverse(3 * g.vertex_count);
  cs.n = k0 * m * m;
  const long long q = third_of(cs.n);
  const int t = cs.universe.size;
  for (int v = 0; v < g.vertex_count; ++v) {
    for (Color c : {Color::R, Color::G, Color::B})
      cs.constraints.push_back({ItemSet::from_items(t, {color_item(v, c)}), q});
    cs.constraints.push_back(
        {ItemSet::from_items(t, {color_item(v, Color::R), color_item(v, Color::G)}), 0});
    cs.constraints.push_back(
        {ItemSet::from_items(t, {color_item(v, Color::R), color_item(v, Color::B)}), 0});
    cs.constraints.push_back(
        {ItemSet::from_items(t, {color_item(v, Color::G), color_item(v, Color::B)}), 0});
  }
  for (auto [u, v] : g.edges) {
    for (Color c : {Color::R, Color::G, Color::B}) {
      std::vector<int> pair{color_item(u, c), color_item(v, c)};
      std::sort(pair.begin(), pair.end());
      cs.constraints.push_back({ItemSet::from_items(t, pair), 0});
    }
  }
  cs.validate();
  return cs;
}

TransactionDatabase coloring_to_database(const Graph& g, const std::vector<Color>& coloring,
                                         long long n) {
  g.validate();
  if (static_cast<int>(coloring.size()) != g.vertex_count)
    throw InputError("coloring size does not match vertex count");
  for (auto [u, v] : g.edges)
    if (coloring[u] == coloring[v]) throw InputError("coloring is not proper");

  const int t = 3 * g.vertex_count;
  std::vector<ItemSet> transactions;
  for (int by = 0; by < 3; ++by) {
    ItemSet s(t);
    for (int v = 0; v < g.vertex_count; ++v) s.set(color_item(v, shift(coloring[v], by)), true);
    transactions.push_back(std::move(s));
  }
  const long long q = third_of(n);
  const long long first_copies = q + (n - 3 * q);
  if (first_copies < 0) throw InputError("n too small for the three-way split");

  TransactionDatabase db;
  db.universe = ItemUniverse(t);
  long long tid = 1;
  for (long long c = 0; c < first_copies; ++c) db.rows.push_back({tid++, transactions[0]});
  for (long long c = 0; c < q; ++c) db.rows.push_back({tid++, transactions[1]});
  for (long long c = 0; c < q; ++c) db.rows.push_back({tid++, transactions[2]});
  return db;
}

}  // namespace invmine
