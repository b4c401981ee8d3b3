#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "invmine/oracle.hpp"
#include "invmine/rng.hpp"

using namespace invmine;

TEST_CASE("count vector enumeration") {
  // t=2, n=2: multisets over 4 types summing to 2 -> C(5,3) = 10 vectors.
  int seen = 0;
  std::set<std::vector<long long>> unique;
  for_each_count_vector(2, 2, [&](const std::vector<long long>& counts) {
    ++seen;
    long long sum = 0;
    for (long long c : counts) sum += c;
    CHECK(sum == 2);
    CHECK(counts.size() == 4);
    unique.insert(counts);
  });
  CHECK(seen == 10);
  CHECK(unique.size() == 10);
}

TEST_CASE("itemset_of_type uses binary digits") {
  CHECK(itemset_of_type(3, 0).empty());
  CHECK(itemset_of_type(3, 1).items() == std::vector<int>{0});
  CHECK(itemset_of_type(3, 5).items() == std::vector<int>{0, 2});
  CHECK(itemset_of_type(3, 7).items() == std::vector<int>{0, 1, 2});
}

TEST_CASE("satisfiable instance has optimum zero") {
  // ({e1}, 1) and ({e2}, 1) over t=2, n=2: {e1},{e2} satisfies exactly.
  ConstraintSet cs;
  cs.universe = ItemUniverse{2};
  cs.n = 2;
  cs.constraints = {{ItemSet::from_items(2, {0}), 1}, {ItemSet::from_items(2, {1}), 1}};
  const OracleResult res = brute_force_optimum(cs, DeviationModel::Overshoot);
  CHECK(res.feasible);
  CHECK(res.optimum == 0);
  // Recheck the witness database.
  long long s0 = 0, s1 = 0, total = 0;
  for (std::size_t type = 0; type < res.witness.size(); ++type) {
    total += res.witness[type];
    if (type & 1) s0 += res.witness[type];
    if (type & 2) s1 += res.witness[type];
  }
  CHECK(total == 2);
  CHECK(s0 == 1);
  CHECK(s1 == 1);
}

TEST_CASE("forced overshoot instance has optimum two") {
  // ({e1}, 2), ({e2}, 2) and n=2 force both items everywhere, so the pair
  // support 2 overshoots a ({e1,e2}, 0) constraint by 2.
  ConstraintSet cs;
  cs.universe = ItemUniverse{2};
  cs.n = 2;
  cs.constraints = {{ItemSet::from_items(2, {0}), 2},
                    {ItemSet::from_items(2, {1}), 2},
                    {ItemSet::from_items(2, {0, 1}), 0}};
  const OracleResult res = brute_force_optimum(cs, DeviationModel::Overshoot);
  CHECK(res.feasible);
  CHECK(res.optimum == 2);
  // Witness is forced: both transactions are {e1, e2} (type 3).
  CHECK(res.witness[3] == 2);
}

TEST_CASE("overshoot is always feasible on valid instances and dominates absolute") {
  // Filling every row with the full universe meets any support from above,
  // so the overshoot model is feasible whenever supports lie in [0, n].
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    ConstraintSet cs;
    cs.universe = ItemUniverse{2};
    cs.n = 1 + static_cast<long long>(rng.next_below(4));
    for (int mask = 1; mask < 4; ++mask) {
      if (!rng.bernoulli(0.7)) continue;
      ItemSet s(2);
      for (int k = 0; k < 2; ++k)
        if (mask & (1 << k)) s.set(k, true);
      cs.constraints.push_back({std::move(s), rng.next_between(0, cs.n)});
    }
    if (cs.constraints.empty()) continue;
    const OracleResult over = brute_force_optimum(cs, DeviationModel::Overshoot);
    const OracleResult abs = brute_force_optimum(cs, DeviationModel::Absolute);
    CHECK(over.feasible);
    CHECK(abs.feasible);
    CHECK(over.optimum >= abs.optimum);
  }
}

TEST_CASE("witness is the lexicographically smallest optimum") {
  // ({e1}, 1), n=2: optima are the count vectors with c1 + c3 = 1; the lex
  // smallest is one {e2} row plus one {e1,e2} row -> (0,0,1,1).
  ConstraintSet cs;
  cs.universe = ItemUniverse{2};
  cs.n = 2;
  cs.constraints = {{ItemSet::from_items(2, {0}), 1}};
  const OracleResult res = brute_force_optimum(cs, DeviationModel::Overshoot);
  CHECK(res.optimum == 0);
  CHECK(res.witness == std::vector<long long>{0, 0, 1, 1});
}

TEST_CASE("scale guard") {
  ConstraintSet cs;
  cs.universe = ItemUniverse{5};
  cs.n = 3;
  cs.constraints = {{ItemSet::from_items(5, {0}), 1}};
  CHECK_THROWS_AS(brute_force_optimum(cs, DeviationModel::Overshoot), ScaleError);
  cs.universe = ItemUniverse{2};
  cs.constraints = {{ItemSet::from_items(2, {0}), 1}};
  cs.n = 11;
  CHECK_THROWS_AS(brute_force_optimum(cs, DeviationModel::Overshoot), ScaleError);
}

TEST_CASE("3-coloring reduction sizes") {
  Graph triangle{3, {{0, 1}, {1, 2}, {0, 2}}};
  const ConstraintSet cs = reduce_3coloring(triangle, 1);
  CHECK(cs.m() == 27);  // 6|V| + 3|E|
  CHECK(cs.n == 729);   // k0 * m^2
  CHECK(cs.universe.size == 9);

  int singletons = 0, pairs = 0;
  for (const auto& c : cs.constraints) {
    if (c.itemset.cardinality() == 1) {
      ++singletons;
      CHECK(c.support == (cs.n + 1) / 3);
    } else {
      REQUIRE(c.itemset.cardinality() == 2);
      ++pairs;
      CHECK(c.support == 0);
    }
  }
  CHECK(singletons == 9);
  CHECK(pairs == 18);
}

TEST_CASE("nearest-integer third") {
  // n = 10: singleton target [n/3] rounds to nearest.
  Graph g{1, {}};
  const ConstraintSet cs = reduce_3coloring(g, 10);  // m=6, n=360
  CHECK(cs.m() == 6);
  CHECK(cs.n == 360);
  for (const auto& c : cs.constraints)
    if (c.itemset.cardinality() == 1) CHECK(c.support == 120);
}

TEST_CASE("coloring_to_database satisfies the reduction constraints") {
  Graph triangle{3, {{0, 1}, {1, 2}, {0, 2}}};
  const ConstraintSet cs = reduce_3coloring(triangle, 1);
  const std::vector<Color> coloring = {Color::R, Color::G, Color::B};
  const TransactionDatabase db = coloring_to_database(triangle, coloring, cs.n);
  CHECK(static_cast<long long>(db.rows.size()) == cs.n);
  for (const auto& c : cs.constraints) {
    const long long sup = support(c.itemset, db);
    if (c.itemset.cardinality() == 2)
      CHECK(sup == 0);
    else
      CHECK(std::abs(sup - c.support) <= 2);
  }
}

TEST_CASE("remainder padding goes to the first transaction type") {
  // n = 10, q = 3: copies 4 + 3 + 3.
  Graph g{1, {}};
  const std::vector<Color> coloring = {Color::R};
  const TransactionDatabase db = coloring_to_database(g, coloring, 10);
  REQUIRE(db.rows.size() == 10);
  long long first_kind = 0;
  for (const auto& row : db.rows)
    if (row.items == db.rows[0].items) ++first_kind;
  CHECK(first_kind == 4);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS((Graph{2, {{0, 0}}}.validate()), InputError);
  CHECK_THROWS_AS((Graph{2, {{0, 5}}}.validate()), InputError);
  CHECK_THROWS_AS((Graph{2, {{0, 1}, {1, 0}}}.validate()), InputError);
  CHECK_NOTHROW((Graph{3, {{0, 1}, {1, 2}}}.validate()));
}
