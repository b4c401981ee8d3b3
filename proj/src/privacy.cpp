#include "invmine/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invmine/formulation.hpp"
#include "invmine/rng.hpp"
#include "invmine/simplex.hpp"

namespace invmine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BranchOutcome {
  double confidence = kInf;
  std::optional<TransactionDatabase> witness;
};

// Solves the augmented LP where support(I) is a free variable restricted to
// [lo, hi], rounds to an integer database, and scores the result: total
// deviation from the original constraints plus the distance of the realized
// support(I) to the window.
BranchOutcome run_branch(const ConstraintSet& cs, const ItemSet& itemset, long long lo,
                         long long hi, const AuditConfig& config) {
  ConstraintSet augmented = cs;
  augmented.constraints.push_back(SupportConstraint{itemset, 0});
  const ModelLayout L = layout_of(augmented);

  // The itemset may duplicate one already in cs, so skip validation.
  LpModel model = build_relaxed_lp(augmented, false);
  // With target 0, z_{m+1} equals support(I); free it from the objective and
  // confine it to the branch window.
  const int zc = L.z(L.m);
  model.objective[zc] = 0.0;
  model.lower[zc] = static_cast<double>(lo);
  model.upper[zc] = static_cast<double>(hi);

  const LpSolution relaxed = solve(model, config.solver);
  BranchOutcome out;
  if (relaxed.status != LpStatus::Optimal) return out;

  const RoundedSolution rounded =
      apply_rounding(config.method, relaxed, augmented, config.seed, config.refine_rounds);

  // Count repair: rounding fixes the slot itemsets, but a degenerate relaxed
  // vertex can leave the duplicate counts badly split (a half-covered slot
  // rounds to all-or-nothing). With the itemsets frozen the score is a
  // piecewise-linear function of the counts alone, so hill-climb single-unit
  // moves between slots. A spare empty slot lets the repair shed support.
  std::vector<ItemSet> slots = rounded.itemsets;
  std::vector<long long> counts = rounded.counts;
  slots.emplace_back(cs.universe.size);
  counts.push_back(0);
  const int nslots = static_cast<int>(slots.size());
  const int m = cs.m();
  std::vector<std::vector<long long>> covers(m, std::vector<long long>(nslots, 0));
  std::vector<long long> window_covers(nslots, 0);
  for (int j = 0; j < nslots; ++j) {
    for (int i = 0; i < m; ++i)
      covers[i][j] = is_subset(cs.constraints[i].itemset, slots[j]) ? 1 : 0;
    window_covers[j] = is_subset(itemset, slots[j]) ? 1 : 0;
  }
  std::vector<long long> sups(m, 0);
  long long wsup = 0;
  for (int j = 0; j < nslots; ++j) {
    for (int i = 0; i < m; ++i) sups[i] += covers[i][j] * counts[j];
    wsup += window_covers[j] * counts[j];
  }
  const auto score_of = [&](const std::vector<long long>& s, long long w) {
    long long total = 0;
    for (int i = 0; i < m; ++i) total += std::llabs(s[i] - cs.constraints[i].support);
    if (w < lo) total += lo - w;
    if (w > hi) total += w - hi;
    return total;
  };
  long long score = score_of(sups, wsup);
  bool improved = true;
  while (improved && score > 0) {
    improved = false;
    for (int src = 0; src < nslots && !improved; ++src) {
      if (counts[src] == 0) continue;
      for (int dst = 0; dst < nslots && !improved; ++dst) {
        if (dst == src) continue;
        std::vector<long long> cand = sups;
        for (int i = 0; i < m; ++i) cand[i] += covers[i][dst] - covers[i][src];
        const long long cw = wsup + window_covers[dst] - window_covers[src];
        const long long cand_score = score_of(cand, cw);
        if (cand_score < score) {
          --counts[src];
          ++counts[dst];
          sups = std::move(cand);
          wsup = cw;
          score = cand_score;
          improved = true;
        }
      }
    }
  }

  TransactionDatabase db;
  db.universe = cs.universe;
  long long tid = 1;
  for (int j = 0; j < nslots; ++j)
    for (long long k = 0; k < counts[j]; ++k) db.rows.push_back(Transaction{tid++, slots[j]});

  out.confidence = static_cast<double>(score);
  out.witness = std::move(db);
  return out;
}

}  // namespace

std::vector<AuditFinding> audit(const ConstraintSet& cs, const std::vector<PrivacyRule>& rules,
                                double threshold, const AuditConfig& config) {
  cs.validate();
  std::vector<AuditFinding> findings;
  findings.reserve(rules.size());
  for (const PrivacyRule& rule : rules) {
    if (rule.itemset.universe_size() != cs.universe.size)
      throw DimensionError("privacy rule itemset does not match the constraint universe");
    if (rule.s_min < 0 || rule.s_max > cs.n || rule.s_min > rule.s_max)
      throw InputError("privacy rule window out of range");

    AuditFinding f;
    f.rule = rule;

    std::optional<BranchOutcome> low;
    if (rule.s_min > 0) low = run_branch(cs, rule.itemset, 0, rule.s_min - 1, config);
    std::optional<BranchOutcome> high;
    if (rule.s_max < cs.n) high = run_branch(cs, rule.itemset, rule.s_max + 1, cs.n, config);

    if (low) f.confidence_low_branch = low->confidence;
    if (high) f.confidence_high_branch = high->confidence;

    if (!low && !high) {
      // Every database of size n has support(I) in the window.
      f.confidence = kInf;
      f.leaked = true;
    } else {
      f.confidence = kInf;
      const BranchOutcome* best = nullptr;
      if (low && low->confidence < f.confidence) {
        f.confidence = low->confidence;
        best = &*low;
      }
      if (high && high->confidence < f.confidence) {
        f.confidence = high->confidence;
        best = &*high;
      }
      f.leaked = f.confidence >= threshold;
      if (best && best->confidence <= threshold && best->witness) f.witness = best->witness;
    }
    findings.push_back(std::move(f));
  }
  return findings;
}

ScrubDatabaseResult scrub_database(const TransactionDatabase& db,
                                   const std::vector<PrivacyRule>& rules, std::uint64_t seed) {
  ScrubDatabaseResult result;
  result.db = db;
  Rng rng(seed);
  const long long n = static_cast<long long>(result.db.rows.size());

  for (const PrivacyRule& rule : rules) {
    if (rule.itemset.universe_size() != db.universe.size)
      throw DimensionError("privacy rule itemset does not match the database universe");
    if (rule.itemset.cardinality() == 0) throw InputError("cannot scrub the empty itemset");

    const long long target = rng.next_between(0, n);
    result.targets.push_back(target);

    std::vector<int> containing;
    std::vector<int> missing;
    for (int r = 0; r < static_cast<int>(result.db.rows.size()); ++r) {
      if (is_subset(rule.itemset, result.db.rows[r].items))
        containing.push_back(r);
      else
        missing.push_back(r);
    }
    long long current = static_cast<long long>(containing.size());

    const std::vector<int> item_ids = rule.itemset.items();
    // Partial Fisher-Yates: each adjusted row is drawn uniformly without
    // replacement from the eligible side.
    while (current < target) {
      const std::size_t pick = rng.next_below(missing.size());
      Transaction& row = result.db.rows[missing[pick]];
      for (int id : item_ids) row.items.set(id, true);
      missing[pick] = missing.back();
      missing.pop_back();
      ++current;
    }
    while (current > target) {
      const std::size_t pick = rng.next_below(containing.size());
      Transaction& row = result.db.rows[containing[pick]];
      // Knock out a random nonempty subset of I so the row no longer holds it.
      const std::uint64_t mask =
          rng.next_below((std::uint64_t{1} << item_ids.size()) - 1) + 1;
      for (std::size_t b = 0; b < item_ids.size(); ++b)
        if (mask & (std::uint64_t{1} << b)) row.items.set(item_ids[b], false);
      containing[pick] = containing.back();
      containing.pop_back();
      --current;
    }
  }
  return result;
}

ConstraintSet scrub_constraints(const ConstraintSet& cs, const ItemSet& sensitive,
                                std::uint64_t seed) {
  if (cs.scrubbed)
    throw InputError("constraint set was already scrubbed once; a second pass would turn "
                     "confidence into an inconsistency indicator");
  cs.validate();
  if (sensitive.universe_size() != cs.universe.size)
    throw DimensionError("sensitive itemset does not match the constraint universe");
  if (cs.constraints.empty()) throw InputError("nothing to scrub in an empty constraint set");

  ConstraintSet out = cs;
  Rng rng(seed);

  // Redraw the support of the constraint most overlapping the sensitive
  // itemset (ties to the lowest index).
  int best = 0;
  long long best_overlap = -1;
  for (int i = 0; i < out.m(); ++i) {
    const long long overlap = inner_product(out.constraints[i].itemset, sensitive);
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = i;
    }
  }
  out.constraints[best].support = rng.next_between(0, out.n);

  // One repair pass in increasing cardinality order: lowering a superset's
  // support can only be required by smaller sets already processed, so a
  // single sweep restores pairwise monotonicity.
  std::vector<int> order(out.constraints.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int ca = out.constraints[a].itemset.cardinality();
    const int cb = out.constraints[b].itemset.cardinality();
    if (ca != cb) return ca < cb;
    return a < b;
  });
  for (std::size_t p = 0; p < order.size(); ++p) {
    SupportConstraint& big = out.constraints[order[p]];
    for (std::size_t q = 0; q < p; ++q) {
      const SupportConstraint& small = out.constraints[order[q]];
      if (is_subset(small.itemset, big.itemset) && big.support > small.support)
        big.support = small.support;
    }
  }

  out.scrubbed = true;
  return out;
}

}  // namespace invmine
