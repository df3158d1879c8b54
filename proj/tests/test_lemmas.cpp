#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "isoratio/lemmas.hpp"

using namespace isoratio;

TEST(Split, SymmetricInstance) {
  const SplitInstance s{1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(split_lhs(s, 1), 3.0);
  EXPECT_DOUBLE_EQ(split_rhs(s, 1), 1.5);
  EXPECT_DOUBLE_EQ(split_lhs(s, 2), 6.0);
  EXPECT_DOUBLE_EQ(split_rhs(s, 2), 1.5);
  const SplitCheck c = check_split(s, 1);
  EXPECT_TRUE(c.holds);
  EXPECT_DOUBLE_EQ(c.margin, 1.5);
}

TEST(Split, RationalInstance) {
  const SplitInstance s{2, 3, 1, 4, 5};
  EXPECT_DOUBLE_EQ(split_lhs(s, 1), 2.0);
  EXPECT_DOUBLE_EQ(split_rhs(s, 1), 1.25);
  EXPECT_NEAR(check_split(s, 1).margin, 0.75, 1e-15);

  const ExactSplit e = check_split_exact({2, 3, 1, 4, 5}, 1);
  EXPECT_EQ(e.lhs, Rational(2));
  EXPECT_EQ(e.rhs, Rational(5, 4));
  EXPECT_EQ(e.margin, Rational(3, 4));
  EXPECT_TRUE(e.holds);
}

TEST(Split, NearDegenerateMarginIsPositive) {
  const SplitInstance s{1, 1, 1e-9, 1, 1};
  const SplitCheck c = check_split(s, 1);
  EXPECT_TRUE(c.holds);
  EXPECT_GT(c.margin, 0.0);
  EXPECT_GT(split_slack(s), 0.0);
  EXPECT_NEAR(split_slack(s), 2e-9 / (1 + 1e-9), 1e-18);
}

TEST(Split, RejectsInvalidInput) {
  for (const SplitInstance& s : {SplitInstance{0, 1, 1, 1, 1}, SplitInstance{1, 1, -1, 1, 1},
                                 SplitInstance{1, 1, 1, 1, std::nan("")}}) {
    try {
      split_lhs(s, 1);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
  }
  EXPECT_THROW(split_lhs(SplitInstance{}, 3), Error);
  EXPECT_NO_THROW(split_lhs(SplitInstance{}, 3, true));
}

TEST(Split, ExactAgreesWithFloating) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> u(1, 50);
  for (int i = 0; i < 10; ++i) {
    const std::array<std::int64_t, 5> v{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const SplitInstance s{double(v[0]), double(v[1]), double(v[2]), double(v[3]), double(v[4])};
    for (int p : {1, 2}) {
      const ExactSplit e = check_split_exact(v, p);
      EXPECT_TRUE(e.holds);
      const double lhs = static_cast<double>(e.lhs);
      const double rhs = static_cast<double>(e.rhs);
      EXPECT_NEAR(split_lhs(s, p), lhs, 1e-12 * lhs);
      EXPECT_NEAR(split_rhs(s, p), rhs, 1e-12 * rhs);
    }
  }
}

TEST(RandomSearch, NoCounterexamples) {
  for (int p : {1, 2}) {
    const CounterexampleReport r = random_search_counterexample(p, 100000);
    EXPECT_EQ(r.trials, 100000u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GT(r.min_relative_margin, 0.0);
  }
}

TEST(RandomSearch, DeterministicAndValidated) {
  SearchOptions o;
  o.seed = 123;
  const auto a = random_search_counterexample(1, 5000, o);
  const auto b = random_search_counterexample(1, 5000, o);
  EXPECT_EQ(a.min_relative_margin, b.min_relative_margin);
  EXPECT_EQ(a.argmin.A3, b.argmin.A3);
  EXPECT_THROW(random_search_counterexample(1, 0), Error);
  EXPECT_THROW(random_search_counterexample(3, 10), Error);
}

TEST(Split, AggregateSlackWhenBothTermsDominate) {
  // If lhs <= each rhs term, dividing by the pairings and summing gives
  // X (1/Y1 + 1/Y2) <= 1, while X (1/Y1 + 1/Y2) - 1 = 2 A1 A2 / (A3 (A1 + A2)) > 0.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> e(-6, 6);
  for (int i = 0; i < 10000; ++i) {
    const SplitInstance s{std::pow(10, e(rng)), std::pow(10, e(rng)), std::pow(10, e(rng)), std::pow(10, e(rng)),
                          std::pow(10, e(rng))};
    using LD = long double;
    const LD a1 = s.A1, a2 = s.A2, a3 = s.A3;
    const LD X = 1 / (a1 + a2) + 1 / a3;
    const LD Y1 = 1 / a1 + 1 / (a2 + a3);
    const LD Y2 = 1 / a2 + 1 / (a1 + a3);
    const LD term = X * (1 / Y1 + 1 / Y2) - 1;
    const double slack = split_slack(s);
    EXPECT_GT(slack, 0.0);
    EXPECT_NEAR(static_cast<double>(term), slack, 1e-9 * std::max(1.0, slack) + 1e-15);
  }
}

TEST(Split, ScaleInvarianceForPowerOne) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> e(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const SplitInstance s{std::pow(10, e(rng)), std::pow(10, e(rng)), std::pow(10, e(rng)), std::pow(10, e(rng)),
                          std::pow(10, e(rng))};
    const double c = std::pow(10, e(rng));
    const SplitInstance t{c * s.L1, c * s.L2, c * s.A1, c * s.A2, c * s.A3};
    const SplitCheck a = check_split(s, 1);
    const SplitCheck b = check_split(t, 1);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_NEAR(a.margin, b.margin, 1e-10 * std::abs(split_lhs(s, 1)));
  }
}

namespace {

const SurfaceOfRevolution& gaussian() {
  static const SurfaceOfRevolution s(WarpingFunction::gaussian_cusp());
  return s;
}

}  // namespace

TEST(Disconnection, GaussianFixedPair) {
  const DisconnectionPenalty d = disconnection_penalty(gaussian(), {0.5, 1.0}, {2.0, 2.5});
  EXPECT_TRUE(d.penalized());
  EXPECT_GT(d.d_union, std::min(d.d_parts[0], d.d_parts[1]));
  EXPECT_TRUE(d.split.holds);
}

TEST(Disconnection, EqualComponentsUseTheSymmetricMargin) {
  const SplitInstance s{2, 2, 1, 1, 3};
  EXPECT_TRUE(check_split(s, 1).holds);
  EXPECT_GT(split_lhs(s, 1), split_rhs(s, 1));
}

TEST(Disconnection, MarginShrinksWithTheSecondShell) {
  double prev = std::numeric_limits<double>::infinity();
  for (double width : {0.5, 0.1, 0.02, 0.004}) {
    const DisconnectionPenalty d = disconnection_penalty(gaussian(), {0.5, 1.0}, {2.0, 2.0 + width});
    EXPECT_TRUE(d.penalized());
    const double slack = split_slack(d.instance);
    EXPECT_GT(slack, 0.0);
    EXPECT_LT(slack, prev);
    prev = slack;
  }
}

TEST(Disconnection, RejectsOverlap) {
  EXPECT_THROW(disconnection_penalty(gaussian(), {0.5, 1.5}, {1.0, 2.0}), Error);
  EXPECT_THROW(disconnection_penalty(gaussian(), {1.0, 0.5}, {2.0, 2.5}), Error);
}

TEST(Disconnection, RandomPairsOnGaussian) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = random_annulus_pair(gaussian(), rng);
    EXPECT_TRUE(disconnection_penalty(gaussian(), a, b).penalized());
  }
}
