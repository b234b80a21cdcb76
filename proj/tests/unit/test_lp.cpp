#include <gtest/gtest.h>

#include <random>

#include "avslice/lp.hpp"
#include "oracles.hpp"

namespace avslice {
namespace {

using lp::Sense;

TEST(Lp, TextbookMaximum) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  lp::Problem p;
  const auto x = p.add_variable(3.0), y = p.add_variable(5.0);
  p.add_row({{x, 1.0}}, Sense::LessEqual, 4.0);
  p.add_row({{y, 2.0}}, Sense::LessEqual, 12.0);
  p.add_row({{x, 3.0}, {y, 2.0}}, Sense::LessEqual, 18.0);
  const auto r = lp::solve(p);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_NEAR(r.objective, 36.0, 1e-9);
  EXPECT_NEAR(r.x[x], 2.0, 1e-9);
  EXPECT_NEAR(r.x[y], 6.0, 1e-9);
}

TEST(Lp, EqualityAndLowerBounds) {
  lp::Problem p;
  const auto a = p.add_variable(1.0, 1.0), b = p.add_variable(2.0, 0.5, 3.0);
  p.add_row({{a, 1.0}, {b, 1.0}}, Sense::Equal, 5.0);
  const auto r = lp::solve(p);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_NEAR(r.x[b], 3.0, 1e-9);
  EXPECT_NEAR(r.x[a], 2.0, 1e-9);
}

TEST(Lp, DetectsInfeasibility) {
  lp::Problem p;
  const auto a = p.add_variable(1.0);
  p.add_row({{a, 1.0}}, Sense::GreaterEqual, 3.0);
  p.add_row({{a, 1.0}}, Sense::LessEqual, 2.0);
  EXPECT_EQ(lp::solve(p).status, lp::Status::Infeasible);
}

TEST(Lp, DetectsUnboundedness) {
  lp::Problem p;
  const auto a = p.add_variable(1.0), b = p.add_variable(0.0);
  p.add_row({{a, 1.0}, {b, -1.0}}, Sense::LessEqual, 1.0);
  EXPECT_EQ(lp::solve(p).status, lp::Status::Unbounded);
}

TEST(Lp, DegenerateCycleProneInstanceTerminates) {
  // Beale's example, which cycles under the textbook largest-coefficient rule.
  lp::Problem p;
  const auto x1 = p.add_variable(0.75), x2 = p.add_variable(-150.0),
             x3 = p.add_variable(0.02), x4 = p.add_variable(-6.0);
  p.add_row({{x1, 0.25}, {x2, -60.0}, {x3, -0.04}, {x4, 9.0}}, Sense::LessEqual, 0.0);
  p.add_row({{x1, 0.5}, {x2, -90.0}, {x3, -0.02}, {x4, 3.0}}, Sense::LessEqual, 0.0);
  p.add_row({{x3, 1.0}}, Sense::LessEqual, 1.0);
  const auto r = lp::solve(p);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_NEAR(r.objective, 0.05, 1e-9);
}

TEST(Lp, MatchesVertexEnumerationOnRandomInstances) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 3.0);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 3, m = 2 + t % 4;
    lp::Problem p;
    testing::SmallLp ref;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = u(rng);
      p.add_variable(c, 0.0, 4.0);
      ref.c.push_back(c);
      ref.lb.push_back(0.0);
      ref.ub.push_back(4.0);
    }
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<lp::Term> terms;
      std::vector<double> row(n);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = u(rng);
        terms.push_back({i, row[i]});
      }
      const bool ge = r % 3 == 2;
      const double rhs = ge ? -pos(rng) : pos(rng);
      p.add_row(terms, ge ? Sense::GreaterEqual : Sense::LessEqual, rhs);
      ref.a.push_back(row);
      ref.sense.push_back(ge ? testing::RowSense::Ge : testing::RowSense::Le);
      ref.b.push_back(rhs);
    }
    const auto got = lp::solve(p);
    const auto want = testing::vertex_enumeration_max(ref);
    ASSERT_EQ(got.status == lp::Status::Optimal, want.has_value()) << "instance " << t;
    if (want) {
      EXPECT_NEAR(got.objective, *want, 1e-7 * std::max(1.0, std::abs(*want)));
      EXPECT_LE(p.max_violation(got.x), 1e-9);
      ++compared;
    }
  }
  EXPECT_GT(compared, 30);
}

}  // namespace
}  // namespace avslice
