#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "invmine/io.hpp"
#include "invmine/rng.hpp"

using namespace invmine;

TEST_CASE("database round trip, including empty transactions") {
  const std::string text = "# a comment\n0 1 2\n\n1 3\n";
  std::istringstream in(text);
  const TransactionDatabase db = io::read_database(in);
  REQUIRE(db.rows.size() == 3);
  CHECK(db.universe.size == 4);
  CHECK(db.rows[0].tid == 1);
  CHECK(db.rows[1].items.cardinality() == 0);
  CHECK(db.rows[2].items.items() == std::vector<int>{1, 3});

  std::ostringstream out;
  io::write_database(out, db);
  std::istringstream again(out.str());
  const TransactionDatabase db2 = io::read_database(again, db.universe.size);
  REQUIRE(db2.rows.size() == db.rows.size());
  for (std::size_t r = 0; r < db.rows.size(); ++r) CHECK(db2.rows[r].items == db.rows[r].items);

  std::ostringstream out2;
  io::write_database(out2, db2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("constraint file round trip") {
  const std::string text = "# header\nn 6\nt 4\n0 1 : 3\n2 : 4\n";
  std::istringstream in(text);
  const ConstraintSet cs = io::read_constraints(in);
  CHECK(cs.n == 6);
  CHECK(cs.universe.size == 4);
  REQUIRE(cs.m() == 2);
  CHECK(cs.constraints[0].itemset.items() == std::vector<int>{0, 1});
  CHECK(cs.constraints[0].support == 3);
  CHECK_FALSE(cs.scrubbed);

  std::ostringstream out;
  io::write_constraints(out, cs);
  std::istringstream again(out.str());
  const ConstraintSet cs2 = io::read_constraints(again);
  CHECK(cs2.n == cs.n);
  CHECK(cs2.universe.size == cs.universe.size);
  REQUIRE(cs2.m() == cs.m());
  for (int i = 0; i < cs.m(); ++i) {
    CHECK(cs2.constraints[i].itemset == cs.constraints[i].itemset);
    CHECK(cs2.constraints[i].support == cs.constraints[i].support);
  }
}

TEST_CASE("scrub lineage marker survives the round trip") {
  ConstraintSet cs;
  cs.universe = ItemUniverse{2};
  cs.n = 4;
  cs.constraints = {{ItemSet::from_items(2, {0}), 2}};
  cs.scrubbed = true;
  std::ostringstream out;
  io::write_constraints(out, cs);
  CHECK(out.str().find("# scrubbed") != std::string::npos);
  std::istringstream in(out.str());
  CHECK(io::read_constraints(in).scrubbed);
}

TEST_CASE("privacy rule file") {
  const std::string text = "0 2 : 1 3\n1 : 0 4\n";
  std::istringstream in(text);
  const auto rules = io::read_privacy_rules(in, 3);
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].itemset.items() == std::vector<int>{0, 2});
  CHECK(rules[0].s_min == 1);
  CHECK(rules[0].s_max == 3);
  CHECK(rules[1].itemset.items() == std::vector<int>{1});

  std::ostringstream out;
  io::write_privacy_rules(out, rules);
  std::istringstream again(out.str());
  const auto rules2 = io::read_privacy_rules(again, 3);
  REQUIRE(rules2.size() == rules.size());
  CHECK(rules2[1].s_max == 4);
}

TEST_CASE("report round trip") {
  SynthesisReport rep;
  rep.n_target = 5;
  rep.n_actual = 5;
  rep.per_constraint = {{ItemSet::from_items(3, {0, 2}), 3, 4, 1},
                        {ItemSet::from_items(3, {1}), 2, 1, -1}};
  rep.sum_abs_deviation = 2;
  rep.max_abs_deviation = 1;
  rep.lp_objective = 0.5;
  std::ostringstream out;
  io::write_report(out, rep);
  std::istringstream in(out.str());
  const SynthesisReport rep2 = io::read_report(in, 3);
  CHECK(rep2.n_target == rep.n_target);
  CHECK(rep2.n_actual == rep.n_actual);
  REQUIRE(rep2.per_constraint.size() == 2);
  CHECK(rep2.per_constraint[0].itemset == rep.per_constraint[0].itemset);
  CHECK(rep2.per_constraint[0].deviation == 1);
  CHECK(rep2.per_constraint[1].deviation == -1);
  CHECK(rep2.sum_abs_deviation == 2);
  CHECK(rep2.max_abs_deviation == 1);
  CHECK(rep2.lp_objective == doctest::Approx(0.5));
}

TEST_CASE("random databases round trip losslessly") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int t = 1 + static_cast<int>(rng.next_below(6));
    const int n = static_cast<int>(rng.next_below(12));
    TransactionDatabase db;
    db.universe = ItemUniverse{t};
    for (int r = 0; r < n; ++r) {
      ItemSet s(t);
      for (int k = 0; k < t; ++k) s.set(k, rng.bernoulli(0.4));
      db.rows.push_back({r + 1, std::move(s)});
    }
    std::ostringstream out;
    io::write_database(out, db);
    std::istringstream in(out.str());
    const TransactionDatabase db2 = io::read_database(in, t);
    REQUIRE(db2.rows.size() == db.rows.size());
    for (std::size_t r = 0; r < db.rows.size(); ++r) CHECK(db2.rows[r].items == db.rows[r].items);
  }
}

TEST_CASE("malformed inputs are rejected") {
  SUBCASE("descending ids") {
    std::istringstream in("2 1\n");
    CHECK_THROWS_AS(io::read_database(in), InputError);
  }
  SUBCASE("missing n line") {
    std::istringstream in("t 3\n0 : 1\n");
    CHECK_THROWS_AS(io::read_constraints(in), InputError);
  }
  SUBCASE("item beyond universe") {
    std::istringstream in("n 3\nt 2\n5 : 1\n");
    CHECK_THROWS_AS(io::read_constraints(in), InputError);
  }
}
