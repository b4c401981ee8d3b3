#include "invmine/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "invmine/rng.hpp"

namespace invmine {

namespace {

void require_optimal(const LpSolution& ostar) {
  if (ostar.status != LpStatus::Optimal)
    throw InputError("rounding requires an optimal relaxed solution");
}

std::vector<double> extract_xstar_counts(const LpSolution& ostar, const ModelLayout& L) {
  std::vector<double> xs(L.m + 1);
  for (int j = 1; j <= L.m + 1; ++j) xs[j - 1] = ostar.values[L.X(j)];
  return xs;
}

std::vector<std::vector<double>> extract_xstar_matrix(const LpSolution& ostar,
                                                      const ModelLayout& L) {
  std::vector<std::vector<double>> xs(L.m, std::vector<double>(L.m + 1));
  for (int i = 1; i <= L.m; ++i)
    for (int j = 1; j <= L.m + 1; ++j) xs[i - 1][j - 1] = ostar.values[L.xx(i, j)];
  return xs;
}

RoundedSolution finalize(std::vector<ItemSet> itemsets, std::vector<long long> counts,
                         const ConstraintSet& cs) {
  const int m = cs.m();
  RoundedSolution sol;
  sol.itemsets = std::move(itemsets);
  sol.counts = std::move(counts);
  sol.ybar.assign(m, std::vector<int>(m + 1, 0));
  sol.xbar.assign(m, std::vector<long long>(m + 1, 0));
  sol.zbar.assign(m, 0);
  sol.realized_objective = 0.0;
  for (int i = 0; i < m; ++i) {
    long long total = 0;
    for (int j = 0; j <= m; ++j) {
      const bool in = is_subset(cs.constraints[i].itemset, sol.itemsets[j]);
      sol.ybar[i][j] = in ? 1 : 0;
      sol.xbar[i][j] = in ? sol.counts[j] : 0;
      total += sol.xbar[i][j];
    }
    sol.zbar[i] = total - cs.constraints[i].support;
    sol.realized_objective += static_cast<double>(sol.zbar[i]);
  }
  return sol;
}

ItemSet union_of(const std::vector<const ItemSet*>& members, int t) {
  ItemSet u(t);
  for (const ItemSet* s : members)
    for (int k = 0; k < t; ++k)
      if (s->contains(k)) u.set(k, true);
  return u;
}

double clamp_unit(double v) { return std::min(1.0, std::max(0.0, v)); }

// Items of `target` not yet provided by `covered`.
ItemSet residual_of(const ItemSet& target, const ItemSet& covered) {
  ItemSet r = target;
  for (int k = 0; k < target.universe_size(); ++k)
    if (covered.contains(k)) r.set(k, false);
  return r;
}

bool covers(const ItemSet& residual, const std::vector<int>& member_indices,
            const std::vector<const ItemSet*>& pool) {
  for (int k : residual.items()) {
    bool hit = false;
    for (int idx : member_indices)
      if (pool[idx]->contains(k)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// Minimal covers of `residual` by subsets of the candidate pool: exact
// enumeration up to 15 candidates, truncated to covers of size <= 3 beyond.
std::vector<std::vector<int>> minimal_covers(const ItemSet& residual,
                                             const std::vector<const ItemSet*>& pool) {
  const int L = static_cast<int>(pool.size());
  std::vector<std::vector<int>> out;
  auto is_minimal = [&](const std::vector<int>& members) {
    std::vector<int> reduced(members.size() - 1);
    for (std::size_t drop = 0; drop < members.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t r = 0; r < members.size(); ++r)
        if (r != drop) reduced[w++] = members[r];
      if (covers(residual, reduced, pool)) return false;
    }
    return true;
  };
  if (L <= 15) {
    for (unsigned mask = 1; mask < (1u << L); ++mask) {
      std::vector<int> members;
      for (int b = 0; b < L; ++b)
        if (mask & (1u << b)) members.push_back(b);
      if (covers(residual, members, pool) && is_minimal(members)) out.push_back(std::move(members));
    }
    return out;
  }
  for (int a = 0; a < L; ++a) {
    if (covers(residual, {a}, pool)) out.push_back({a});
  }
  for (int a = 0; a < L; ++a)
    for (int b = a + 1; b < L; ++b) {
      std::vector<int> members{a, b};
      if (covers(residual, members, pool) && is_minimal(members)) out.push_back(std::move(members));
    }
  for (int a = 0; a < L; ++a)
    for (int b = a + 1; b < L; ++b)
      for (int c = b + 1; c < L; ++c) {
        std::vector<int> members{a, b, c};
        if (covers(residual, members, pool) && is_minimal(members))
          out.push_back(std::move(members));
      }
  return out;
}

}  // namespace

void ProbabilityContext::refresh() {
  const ConstraintSet& cs = *constraints;
  const int m = cs.m();
  const int t = cs.universe.size;

  // Committed union per column and per-entry base probabilities.
  std::vector<ItemSet> covered_union(m + 1, ItemSet(t));
  for (int j = 0; j <= m; ++j) {
    std::vector<const ItemSet*> members;
    for (int i = 0; i < m; ++i)
      if (determined[i][j] == 1) members.push_back(&cs.constraints[i].itemset);
    covered_union[j] = union_of(members, t);
  }
  auto base_of = [&](int i, int j) -> double {
    if (determined[i][j] == 1) return 1.0;
    if (is_subset(cs.constraints[i].itemset, covered_union[j])) return 1.0;
    if (determined[i][j] == 0) return 0.0;
    if (counts[j] == 0) return 0.0;
    return clamp_unit(xstar[i][j] / static_cast<double>(counts[j]));
  };

  std::vector<std::vector<double>> prev(m, std::vector<double>(m + 1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= m; ++j) prev[i][j] = base_of(i, j);

  // Cover structure does not change between refinement rounds; cache it.
  struct Entry {
    std::vector<int> pool;                  // constraint indices feeding the covers
    std::vector<std::vector<int>> covers;   // indices into pool
  };
  std::vector<std::vector<Entry>> entries(m, std::vector<Entry>(m + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= m; ++j) {
      if (determined[i][j] == 1) continue;
      const ItemSet residual = residual_of(cs.constraints[i].itemset, covered_union[j]);
      if (residual.empty()) continue;  // base already 1
      Entry& e = entries[i][j];
      std::vector<const ItemSet*> pool_sets;
      for (int other = 0; other < m; ++other) {
        if (other == i || determined[other][j] != -1) continue;
        if (inner_product(cs.constraints[other].itemset, residual) == 0) continue;
        e.pool.push_back(other);
        pool_sets.push_back(&cs.constraints[other].itemset);
      }
      e.covers = minimal_covers(residual, pool_sets);
    }
  }

  const int passes = 1 + std::max(0, refine_rounds);
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<std::vector<double>> next(m, std::vector<double>(m + 1));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j <= m; ++j) {
        const double base = base_of(i, j);
        if (base == 1.0 || determined[i][j] == 1) {
          next[i][j] = base;
          continue;
        }
        double correction = 0.0;
        const Entry& e = entries[i][j];
        for (const auto& cover : e.covers) {
          double p = 1.0;
          for (int idx : cover) p *= prev[e.pool[idx]][j];
          correction += p;
        }
        next[i][j] = clamp_unit(base + (1.0 - base) * correction);
      }
    }
    prev = std::move(next);
  }
  probs = std::move(prev);
}

double prob_subset(const ProbabilityContext& ctx, int i, int j) {
  if (!ctx.probs.empty()) return ctx.probs[i][j];
  ProbabilityContext scratch = ctx;
  scratch.refresh();
  return scratch.probs[i][j];
}

double expected_objective(const ProbabilityContext& ctx) {
  const ProbabilityContext* use = &ctx;
  ProbabilityContext scratch;
  if (ctx.probs.empty()) {
    scratch = ctx;
    scratch.refresh();
    use = &scratch;
  }
  const ConstraintSet& cs = *use->constraints;
  double total = 0.0;
  for (int i = 0; i < cs.m(); ++i) {
    double expected_support = 0.0;
    for (int j = 0; j <= cs.m(); ++j)
      expected_support += static_cast<double>(use->counts[j]) * use->probs[i][j];
    total += expected_support - static_cast<double>(cs.constraints[i].support);
  }
  return total;
}

namespace {

// Branch-comparison objective for the derandomization: per-constraint signed
// expectations aggregated by absolute value. Minimizing the signed sum itself
// would always prefer emptying every candidate itemset, since committing a
// variable can only raise inclusion probabilities.
double abs_expected_objective(const ProbabilityContext& ctx) {
  const ConstraintSet& cs = *ctx.constraints;
  double total = 0.0;
  for (int i = 0; i < cs.m(); ++i) {
    double expected_support = 0.0;
    for (int j = 0; j <= cs.m(); ++j)
      expected_support += static_cast<double>(ctx.counts[j]) * ctx.probs[i][j];
    total += std::abs(expected_support - static_cast<double>(cs.constraints[i].support));
  }
  return total;
}

}  // namespace

std::vector<long long> balance_counts(const std::vector<double>& xstar_counts, long long n,
                                      std::uint64_t seed) {
  if (n < 0) throw InputError("target transaction count must be nonnegative");
  for (double v : xstar_counts)
    if (v < 0.0) throw InputError("fractional counts must be nonnegative");
  std::vector<long long> counts(xstar_counts.size());
  long long sum = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    counts[j] = std::llround(xstar_counts[j]);
    sum += counts[j];
  }
  Rng rng(seed);
  while (sum > n) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(counts.size()));
    if (counts[j] > 0) {
      --counts[j];
      --sum;
    }
  }
  while (sum < n) {
    ++counts[static_cast<std::size_t>(rng.next_below(counts.size()))];
    ++sum;
  }
  return counts;
}

RoundedSolution round_method1(const LpSolution& ostar, const ConstraintSet& cs,
                              std::uint64_t seed) {
  require_optimal(ostar);
  const ModelLayout L = layout_of(cs);
  std::vector<ItemSet> itemsets;
  for (int j = 1; j <= L.m + 1; ++j) {
    ItemSet s(L.t);
    for (int k = 1; k <= L.t; ++k) s.set(k - 1, ostar.values[L.u(j, k)] >= 0.5);
    itemsets.push_back(std::move(s));
  }
  return finalize(std::move(itemsets), balance_counts(extract_xstar_counts(ostar, L), cs.n, seed),
                  cs);
}

RoundedSolution round_method2(const LpSolution& ostar, const ConstraintSet& cs,
                              std::uint64_t seed) {
  require_optimal(ostar);
  const ModelLayout L = layout_of(cs);
  const auto counts = balance_counts(extract_xstar_counts(ostar, L), cs.n, seed);
  std::vector<ItemSet> itemsets;
  for (int j = 1; j <= L.m + 1; ++j) {
    std::vector<const ItemSet*> members;
    if (counts[j - 1] > 0) {
      for (int i = 1; i <= L.m; ++i)
        if (ostar.values[L.xx(i, j)] >= 0.5 * static_cast<double>(counts[j - 1]))
          members.push_back(&cs.constraints[i - 1].itemset);
    }
    itemsets.push_back(union_of(members, L.t));
  }
  return finalize(std::move(itemsets), counts, cs);
}

RoundedSolution randomized_round_x(const LpSolution& ostar, const ConstraintSet& cs,
                                   std::uint64_t seed) {
  require_optimal(ostar);
  const ModelLayout L = layout_of(cs);
  const auto counts = balance_counts(extract_xstar_counts(ostar, L), cs.n, seed);
  Rng rng(seed ^ 0x5eedf00ddeadbeefULL);
  std::vector<std::vector<int>> draws(L.m, std::vector<int>(L.m + 1, 0));
  for (int i = 1; i <= L.m; ++i)
    for (int j = 1; j <= L.m + 1; ++j) {
      if (counts[j - 1] == 0) continue;
      const double p = clamp_unit(ostar.values[L.xx(i, j)] / static_cast<double>(counts[j - 1]));
      draws[i - 1][j - 1] = rng.bernoulli(p) ? 1 : 0;
    }
  std::vector<ItemSet> itemsets;
  for (int j = 0; j <= L.m; ++j) {
    std::vector<const ItemSet*> members;
    for (int i = 0; i < L.m; ++i)
      if (draws[i][j]) members.push_back(&cs.constraints[i].itemset);
    itemsets.push_back(union_of(members, L.t));
  }
  RoundedSolution sol = finalize(std::move(itemsets), counts, cs);
  sol.draws = std::move(draws);
  return sol;
}

RoundedSolution randomized_round_u(const LpSolution& ostar, const ConstraintSet& cs,
                                   std::uint64_t seed) {
  require_optimal(ostar);
  const ModelLayout L = layout_of(cs);
  Rng rng(seed ^ 0x5eedf00ddeadbeefULL);
  std::vector<std::vector<int>> draws(L.m + 1, std::vector<int>(L.t, 0));
  std::vector<ItemSet> itemsets;
  for (int j = 1; j <= L.m + 1; ++j) {
    ItemSet s(L.t);
    for (int k = 1; k <= L.t; ++k) {
      const bool on = rng.bernoulli(clamp_unit(ostar.values[L.u(j, k)]));
      draws[j - 1][k - 1] = on ? 1 : 0;
      s.set(k - 1, on);
    }
    itemsets.push_back(std::move(s));
  }
  RoundedSolution sol = finalize(
      std::move(itemsets), balance_counts(extract_xstar_counts(ostar, L), cs.n, seed), cs);
  sol.draws = std::move(draws);
  return sol;
}

RoundedSolution derandomize_x(const LpSolution& ostar, const ConstraintSet& cs,
                              int refine_rounds, std::uint64_t seed, DerandLog* log) {
  require_optimal(ostar);
  const ModelLayout L = layout_of(cs);

  ProbabilityContext ctx;
  ctx.constraints = &cs;
  ctx.counts = balance_counts(extract_xstar_counts(ostar, L), cs.n, seed);
  ctx.xstar = extract_xstar_matrix(ostar, L);
  ctx.determined.assign(L.m, std::vector<int>(L.m + 1, -1));
  ctx.refine_rounds = refine_rounds;

  for (int i = 0; i < L.m; ++i) {
    for (int j = 0; j <= L.m; ++j) {
      ctx.determined[i][j] = 0;
      ctx.refresh();
      const double e_zero = abs_expected_objective(ctx);
      ctx.determined[i][j] = 1;
      ctx.refresh();
      const double e_committed = abs_expected_objective(ctx);
      const int chosen = e_committed < e_zero ? 1 : 0;  // ties keep the zero branch
      ctx.determined[i][j] = chosen;
      if (log) log->push_back(DerandStep{i, j, e_zero, e_committed, chosen});
    }
  }
  std::vector<ItemSet> itemsets;
  for (int j = 0; j <= L.m; ++j) {
    std::vector<const ItemSet*> members;
    for (int i = 0; i < L.m; ++i)
      if (ctx.determined[i][j] == 1) members.push_back(&cs.constraints[i].itemset);
    itemsets.push_back(union_of(members, L.t));
  }
  return finalize(std::move(itemsets), ctx.counts, cs);
}

RoundedSolution derandomize_u(const LpSolution& ostar, const ConstraintSet& cs,
                              std::uint64_t seed, DerandLog* log) {
  require_optimal(ostar);
  const ModelLayout L = layout_of(cs);
  const auto counts = balance_counts(extract_xstar_counts(ostar, L), cs.n, seed);

  // -1 undetermined; otherwise the fixed binary value.
  std::vector<std::vector<int>> fixed(L.m + 1, std::vector<int>(L.t, -1));
  auto expectation = [&]() {
    double total = 0.0;
    for (int i = 0; i < L.m; ++i) {
      double expected_support = 0.0;
      const auto items = cs.constraints[i].itemset.items();
      for (int j = 0; j <= L.m; ++j) {
        double p = 1.0;
        for (int item : items) {
          const int f = fixed[j][item];
          p *= (f >= 0) ? static_cast<double>(f)
                        : clamp_unit(ostar.values[L.u(j + 1, item + 1)]);
        }
        expected_support += static_cast<double>(counts[j]) * p;
      }
      total += std::abs(expected_support - static_cast<double>(cs.constraints[i].support));
    }
    return total;
  };

  for (int j = 0; j <= L.m; ++j) {
    for (int k = 0; k < L.t; ++k) {
      fixed[j][k] = 0;
      const double e_zero = expectation();
      fixed[j][k] = 1;
      const double e_one = expectation();
      const int chosen = e_one < e_zero ? 1 : 0;  // ties keep the zero branch
      fixed[j][k] = chosen;
      if (log) log->push_back(DerandStep{j, k, e_zero, e_one, chosen});
    }
  }
  std::vector<ItemSet> itemsets;
  for (int j = 0; j <= L.m; ++j) {
    ItemSet s(L.t);
    for (int k = 0; k < L.t; ++k) s.set(k, fixed[j][k] == 1);
    itemsets.push_back(std::move(s));
  }
  return finalize(std::move(itemsets), counts, cs);
}

TransactionDatabase build_database(const RoundedSolution& sol, const ItemUniverse& universe) {
  TransactionDatabase db;
  db.universe = universe;
  long long tid = 1;
  for (std::size_t j = 0; j < sol.itemsets.size(); ++j)
    for (long long c = 0; c < sol.counts[j]; ++c)
      db.rows.push_back(Transaction{tid++, sol.itemsets[j]});
  return db;
}

RoundedSolution apply_rounding(RoundingMethod method, const LpSolution& ostar,
                               const ConstraintSet& cs, std::uint64_t seed, int refine_rounds) {
  switch (method) {
    case RoundingMethod::RoundU: return round_method1(ostar, cs, seed);
    case RoundingMethod::RoundX: return round_method2(ostar, cs, seed);
    case RoundingMethod::RandomX: return randomized_round_x(ostar, cs, seed);
    case RoundingMethod::RandomU: return randomized_round_u(ostar, cs, seed);
    case RoundingMethod::DerandomX: return derandomize_x(ostar, cs, refine_rounds, seed);
    case RoundingMethod::DerandomU: return derandomize_u(ostar, cs, seed);
  }
  throw InputError("unknown rounding method");
}

}  // namespace invmine
