#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "invmine/formulation.hpp"
#include "invmine/rng.hpp"
#include "invmine/simplex.hpp"

using namespace invmine;

namespace {

LpModel make_model(int ncols, std::vector<double> lower, std::vector<double> upper,
                   std::vector<double> objective) {
  LpModel m;
  m.columns.assign(static_cast<std::size_t>(ncols), VarRef{VarKind::Z, 1, 0, 0});
  m.lower = std::move(lower);
  m.upper = std::move(upper);
  m.objective = std::move(objective);
  return m;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("one-variable problems") {
  SUBCASE("minimize x subject to x >= 3") {
    LpModel m = make_model(1, {0.0}, {kInf}, {1.0});
    m.rows.push_back({{{0, 1.0}}, Relation::GE, 3.0});
    const LpSolution s = solve(m);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(3.0));
    CHECK(s.values[0] == doctest::Approx(3.0));
  }
  SUBCASE("infeasible bounds") {
    LpModel m = make_model(1, {0.0}, {1.0}, {1.0});
    m.rows.push_back({{{0, 1.0}}, Relation::GE, 2.0});
    CHECK(solve(m).status == LpStatus::Infeasible);
  }
  SUBCASE("unbounded") {
    LpModel m = make_model(1, {0.0}, {kInf}, {-1.0});
    CHECK(solve(m).status == LpStatus::Unbounded);
  }
}

TEST_CASE("classic two-variable LP") {
  // minimize -x - 2y s.t. x + y <= 4, x <= 2, y <= 3; optimum at (1, 3).
  LpModel m = make_model(2, {0.0, 0.0}, {2.0, 3.0}, {-1.0, -2.0});
  m.rows.push_back({{{0, 1.0}, {1, 1.0}}, Relation::LE, 4.0});
  const LpSolution s = solve(m);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-7.0));
  CHECK(s.values[0] == doctest::Approx(1.0));
  CHECK(s.values[1] == doctest::Approx(3.0));
}

TEST_CASE("equality systems need phase one") {
  // minimize x + y s.t. x + 2y = 4, 3x + y = 7 -> unique point (2, 1).
  LpModel m = make_model(2, {0.0, 0.0}, {kInf, kInf}, {1.0, 1.0});
  m.rows.push_back({{{0, 1.0}, {1, 2.0}}, Relation::EQ, 4.0});
  m.rows.push_back({{{0, 3.0}, {1, 1.0}}, Relation::EQ, 7.0});
  const LpSolution s = solve(m);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.values[0] == doctest::Approx(2.0));
  CHECK(s.values[1] == doctest::Approx(1.0));
  CHECK(s.objective == doctest::Approx(3.0));
}

TEST_CASE("infeasible equality system") {
  LpModel m = make_model(2, {0.0, 0.0}, {kInf, kInf}, {0.0, 0.0});
  m.rows.push_back({{{0, 1.0}, {1, 1.0}}, Relation::EQ, 1.0});
  m.rows.push_back({{{0, 1.0}, {1, 1.0}}, Relation::EQ, 2.0});
  CHECK(solve(m).status == LpStatus::Infeasible);
}

TEST_CASE("vertex enumeration oracle on random dense LPs") {
  // minimize c'x over 0 <= x <= u, A x <= b with nonnegative A and b: compare
  // against brute-force over a fine grid of basic candidates via enumeration
  // of active-constraint intersections in 2 variables.
  Rng rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    const double u0 = 1.0 + static_cast<double>(rng.next_below(4));
    const double u1 = 1.0 + static_cast<double>(rng.next_below(4));
    const double c0 = static_cast<double>(rng.next_between(-4, 4));
    const double c1 = static_cast<double>(rng.next_between(-4, 4));
    const double a0 = 1.0 + static_cast<double>(rng.next_below(3));
    const double a1 = 1.0 + static_cast<double>(rng.next_below(3));
    const double b = 1.0 + static_cast<double>(rng.next_below(8));

    LpModel m = make_model(2, {0.0, 0.0}, {u0, u1}, {c0, c1});
    m.rows.push_back({{{0, a0}, {1, a1}}, Relation::LE, b});
    const LpSolution s = solve(m);
    REQUIRE(s.status == LpStatus::Optimal);

    // Candidate vertices: intersections of the five bounding lines.
    double best = kInf;
    auto consider = [&](double x, double y) {
      if (x < -1e-9 || y < -1e-9 || x > u0 + 1e-9 || y > u1 + 1e-9) return;
      if (a0 * x + a1 * y > b + 1e-9) return;
      best = std::min(best, c0 * x + c1 * y);
    };
    const double xs[] = {0.0, u0, (b - a1 * 0.0) / a0, (b - a1 * u1) / a0};
    const double ys[] = {0.0, u1, (b - a0 * 0.0) / a1, (b - a0 * u0) / a1};
    for (double x : xs)
      for (double y : {0.0, u1, (b - a0 * x) / a1}) consider(x, y);
    for (double y : ys)
      for (double x : {0.0, u0, (b - a1 * y) / a0}) consider(x, y);
    CHECK(s.objective == doctest::Approx(best).epsilon(1e-6));
  }
}

TEST_CASE("relaxation of a satisfiable constraint set has optimum zero") {
  ConstraintSet cs;
  cs.universe = ItemUniverse{2};
  cs.n = 3;
  cs.constraints = {{ItemSet::from_items(2, {0}), 2}, {ItemSet::from_items(2, {1}), 1}};
  const LpSolution s = solve(build_relaxed_lp(cs));
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("relaxation objective is never negative") {
  Rng rng(555);
  for (int trial = 0; trial < 15; ++trial) {
    ConstraintSet cs;
    cs.universe = ItemUniverse{3};
    cs.n = 6;
    for (int mask = 1; mask < 8; ++mask) {
      if (!rng.bernoulli(0.5)) continue;
      ItemSet s(3);
      for (int k = 0; k < 3; ++k)
        if (mask & (1 << k)) s.set(k, true);
      cs.constraints.push_back({std::move(s), rng.next_between(0, 6)});
    }
    if (cs.constraints.empty()) continue;
    const LpSolution s = solve(build_relaxed_lp(cs));
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective >= -1e-7);
  }
}

TEST_CASE("determinism: identical model solves bit-identically") {
  ConstraintSet cs;
  cs.universe = ItemUniverse{3};
  cs.n = 5;
  cs.constraints = {{ItemSet::from_items(3, {0, 1}), 3}, {ItemSet::from_items(3, {2}), 2}};
  const LpModel model = build_relaxed_lp(cs);
  const LpSolution a = solve(model);
  const LpSolution b = solve(model);
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK((a.values.array() == b.values.array()).all());
}

TEST_CASE("iteration limit is reported") {
  LpModel m = make_model(2, {0.0, 0.0}, {kInf, kInf}, {1.0, 1.0});
  m.rows.push_back({{{0, 1.0}, {1, 2.0}}, Relation::EQ, 4.0});
  m.rows.push_back({{{0, 3.0}, {1, 1.0}}, Relation::EQ, 7.0});
  SolverConfig cfg;
  cfg.max_iterations = 1;
  CHECK(solve(m, cfg).status == LpStatus::IterationLimit);
}
