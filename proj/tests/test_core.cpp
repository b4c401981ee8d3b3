#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "invmine/core.hpp"

using namespace invmine;

namespace {

// Every itemset over a universe of size t, as characteristic bitmasks.
std::vector<ItemSet> all_itemsets(int t) {
  std::vector<ItemSet> out;
  for (int mask = 0; mask < (1 << t); ++mask) {
    ItemSet s(t);
    for (int k = 0; k < t; ++k)
      if (mask & (1 << k)) s.set(k, true);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("itemset basics") {
  ItemSet s = ItemSet::from_items(4, {1, 3});
  CHECK(s.cardinality() == 2);
  CHECK(s.contains(1));
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(0));
  CHECK(s.items() == std::vector<int>{1, 3});
  CHECK_THROWS_AS(ItemSet::from_items(2, {5}), InputError);
}

TEST_CASE("inner product and subset laws, exhaustive t <= 4") {
  for (int t = 0; t <= 4; ++t) {
    const auto sets = all_itemsets(t);
    for (const auto& a : sets) {
      for (const auto& b : sets) {
        long long ip = 0;
        for (int k = 0; k < t; ++k)
          if (a.contains(k) && b.contains(k)) ++ip;
        CHECK(inner_product(a, b) == ip);
        CHECK(inner_product(a, b) == inner_product(b, a));
        const bool sub = [&] {
          for (int k = 0; k < t; ++k)
            if (a.contains(k) && !b.contains(k)) return false;
          return true;
        }();
        CHECK(is_subset(a, b) == sub);
        CHECK(is_subset(a, b) == (inner_product(a, b) == a.cardinality()));
      }
    }
  }
}

TEST_CASE("support counting and antitonicity") {
  TransactionDatabase db;
  db.universe = ItemUniverse{3};
  db.rows = {
      {1, ItemSet::from_items(3, {0, 1})},
      {2, ItemSet::from_items(3, {0, 1, 2})},
      {3, ItemSet::from_items(3, {2})},
      {4, ItemSet::from_items(3, {})},
  };
  CHECK(support(ItemSet::from_items(3, {}), db) == 4);
  CHECK(support(ItemSet::from_items(3, {0}), db) == 2);
  CHECK(support(ItemSet::from_items(3, {0, 1}), db) == 2);
  CHECK(support(ItemSet::from_items(3, {0, 1, 2}), db) == 1);
  CHECK(support(ItemSet::from_items(3, {2}), db) == 2);

  // support is antitone under inclusion
  const auto sets = all_itemsets(3);
  for (const auto& a : sets)
    for (const auto& b : sets)
      if (is_subset(a, b)) CHECK(support(a, db) >= support(b, db));
}

TEST_CASE("frequency is an exact rational") {
  TransactionDatabase db;
  db.universe = ItemUniverse{2};
  db.rows = {{1, ItemSet::from_items(2, {0})},
             {2, ItemSet::from_items(2, {0})},
             {3, ItemSet::from_items(2, {1})}};
  const Rational f = frequency(ItemSet::from_items(2, {0}), db);
  CHECK(f.num == 2);
  CHECK(f.den == 3);
}

TEST_CASE("rational normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0, 1));
  CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("constraint set validation") {
  ConstraintSet cs;
  cs.universe = ItemUniverse{3};
  cs.n = 5;
  cs.constraints = {{ItemSet::from_items(3, {0}), 3}};
  CHECK_NOTHROW(cs.validate());

  SUBCASE("duplicate itemset rejected") {
    cs.constraints.push_back({ItemSet::from_items(3, {0}), 2});
    CHECK_THROWS_AS(cs.validate(), InputError);
  }
  SUBCASE("empty itemset rejected") {
    cs.constraints.push_back({ItemSet(3), 2});
    CHECK_THROWS_AS(cs.validate(), InputError);
  }
  SUBCASE("support above n rejected") {
    cs.constraints.push_back({ItemSet::from_items(3, {1}), 6});
    CHECK_THROWS_AS(cs.validate(), InputError);
  }
}

TEST_CASE("deviation report") {
  ConstraintSet cs;
  cs.universe = ItemUniverse{2};
  cs.n = 3;
  cs.constraints = {{ItemSet::from_items(2, {0}), 2}, {ItemSet::from_items(2, {1}), 3}};
  TransactionDatabase db;
  db.universe = cs.universe;
  db.rows = {{1, ItemSet::from_items(2, {0})},
             {2, ItemSet::from_items(2, {0, 1})},
             {3, ItemSet::from_items(2, {0})}};
  const SynthesisReport rep = deviation_report(db, cs, 0.25);
  CHECK(rep.n_target == 3);
  CHECK(rep.n_actual == 3);
  CHECK(rep.per_constraint[0].actual == 3);
  CHECK(rep.per_constraint[0].deviation == 1);
  CHECK(rep.per_constraint[1].actual == 1);
  CHECK(rep.per_constraint[1].deviation == -2);
  CHECK(rep.sum_abs_deviation == 3);
  CHECK(rep.max_abs_deviation == 2);
  CHECK(rep.lp_objective == doctest::Approx(0.25));
}
