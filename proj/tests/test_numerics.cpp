#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "isoratio/numerics.hpp"

using namespace isoratio;
using namespace isoratio::numerics;
using std::numbers::pi;

TEST(Interval, RejectsDegenerateAndReversed) {
  EXPECT_THROW(Interval(0.0, 0.0), Error);
  EXPECT_THROW(Interval(1.0, 0.0), Error);
  EXPECT_THROW(Interval(-kInf, 0.0), Error);
  EXPECT_NO_THROW(Interval(0.0, kInf));
  EXPECT_TRUE(Interval(0.0, kInf).unbounded());
}

TEST(Integrate, GaussianAreaOverHalfLine) {
  const auto r = integrate([](double t) { return 2 * pi * t * std::exp(-t * t); }, Interval(0.0, kInf),
                           {1e-12, 1e-14, 4000}, DecayBound{2 * pi, 1.0, 1.0});
  EXPECT_NEAR(r.value, pi, 1e-11 * pi);
  EXPECT_GE(r.error_bound, 0.0);
  EXPECT_GE(r.evaluations, 1u);
}

TEST(Integrate, ExponentialTail) {
  const auto r = integrate([](double t) { return 2 * pi * std::exp(-t); }, Interval(1.0, kInf), {1e-12, 1e-14, 4000},
                           DecayBound{2 * pi, 1.0, 1.0});
  EXPECT_NEAR(r.value, 2 * pi * std::exp(-1.0), 1e-11);
}

TEST(Integrate, UnboundedWithoutCertificateIsNonIntegrable) {
  try {
    integrate([](double t) { return std::exp(-t); }, Interval(0.0, kInf));
    FAIL() << "expected NonIntegrable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonIntegrable);
  }
}

TEST(Integrate, StalledRefinementReportsToleranceNotMet) {
  // A jump cannot be resolved to 1e-15 with a handful of panels.
  try {
    integrate([](double t) { return t < 0.3 ? 0.0 : 1.0; }, Interval(0.0, 1.0), {1e-15, 0.0, 8});
    FAIL() << "expected ToleranceNotMet";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ToleranceNotMet);
  }
}

TEST(Integrate, ReportedErrorBoundsTheTrueError) {
  const auto r = integrate([](double t) { return std::sin(t) * std::exp(-0.1 * t); }, Interval(0.0, 20.0), {1e-10});
  const double exact = (1.0 - std::exp(-2.0) * (0.1 * std::sin(20.0) + std::cos(20.0))) / 1.01;
  EXPECT_LE(std::abs(r.value - exact), std::max(r.error_bound, 1e-15));
}

TEST(Integrate, AdditiveOnRandomPolynomials) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> c(6);
    for (double& x : c) x = u(rng);
    auto f = [&](double t) {
      double v = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
      return v;
    };
    double pts[3] = {u(rng), u(rng), u(rng)};
    std::sort(std::begin(pts), std::end(pts));
    if (pts[1] - pts[0] < 1e-3 || pts[2] - pts[1] < 1e-3) continue;
    const QuadratureOptions o{1e-11, 1e-12, 4000};
    const auto whole = integrate(f, Interval(pts[0], pts[2]), o);
    const auto left = integrate(f, Interval(pts[0], pts[1]), o);
    const auto right = integrate(f, Interval(pts[1], pts[2]), o);
    const double slack = whole.error_bound + left.error_bound + right.error_bound + 1e-12;
    EXPECT_NEAR(whole.value, left.value + right.value, slack) << "trial " << trial;
  }
}

TEST(SolveMonotone, SquareRoot) { EXPECT_NEAR(solve_monotone([](double t) { return t * t; }, 4.0, {0.0, 10.0}), 2.0, 1e-12); }

TEST(SolveMonotone, GaussianTailInversion) {
  const double t = solve_monotone([](double x) { return pi * std::exp(-x * x); }, pi / 2, Interval(0.0, kInf));
  EXPECT_NEAR(t, std::sqrt(std::log(2.0)), 1e-10);
}

TEST(SolveMonotone, TargetOutOfRange) {
  try {
    solve_monotone([](double t) { return t * t; }, 200.0, {0.0, 10.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TargetOutOfRange);
  }
}

TEST(SolveMonotone, NotBracketedOnUnboundedRange) {
  try {
    solve_monotone([](double t) { return std::atan(t); }, 2.0, Interval(0.0, kInf));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBracketed);
  }
}

TEST(SolveMonotone, RoundTripOnRandomCubics) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double tol = 1e-10;
  for (int trial = 0; trial < 100; ++trial) {
    // a t^3 + b t + c with a, b > 0 is strictly increasing.
    const double a = pos(rng), b = pos(rng), c = pos(rng) - 1.5;
    auto f = [=](double t) { return a * t * t * t + b * t + c; };
    const double y = f(-2.0) + u(rng) * (f(2.0) - f(-2.0));
    const double t = solve_monotone(f, y, {-2.0, 2.0}, tol);
    EXPECT_LE(std::abs(f(t) - y), tol * std::max(1.0, std::abs(y))) << "trial " << trial;
  }
}

TEST(Minimize1d, Parabola) {
  const auto m = minimize_1d([](double x) { return (x - 1) * (x - 1); }, {0.0, 3.0});
  EXPECT_NEAR(m.argmin, 1.0, 1e-8);
  EXPECT_NEAR(m.value, 0.0, 1e-15);
}

TEST(Minimize1d, ConstantTiesGoToLowerEnd) {
  const auto m = minimize_1d([](double) { return 5.0; }, {-2.0, 4.0});
  EXPECT_EQ(m.argmin, -2.0);
  EXPECT_EQ(m.grid_index, 0u);
}

TEST(Minimize1d, RejectsCoarseGrids) { EXPECT_THROW(minimize_1d([](double x) { return x; }, {0.0, 1.0}, 10), Error); }

TEST(Minimize1d, GaussianRatioAgainstDenseGrid) {
  auto f = [](double t) { return 2 * t / (1 - std::exp(-t * t)); };
  const auto m = minimize_1d(f, {0.05, 6.0});
  // Independent oracle: 10^6-point scan.
  double best_t = 0.05, best = f(0.05);
  const int n = 1000000;
  for (int i = 1; i < n; ++i) {
    const double t = 0.05 + (6.0 - 0.05) * i / (n - 1);
    if (f(t) < best) best = f(t), best_t = t;
  }
  EXPECT_NEAR(m.argmin, best_t, 1e-5);
  EXPECT_LE(m.value, best * (1 + 1e-12));
  EXPECT_NEAR(m.argmin, 1.12, 0.01);
  // Stationarity e^{t^2} = 1 + 2 t^2 up to the golden-section resolution.
  EXPECT_LT(std::abs(std::exp(m.argmin * m.argmin) - 1 - 2 * m.argmin * m.argmin), 1e-6);
}

TEST(Minimize1d, RandomConvexQuadratics) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> curv(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double v = u(rng), k = curv(rng), c = u(rng);
    const auto m = minimize_1d([=](double x) { return k * (x - v) * (x - v) + c; }, {-6.0, 6.0});
    EXPECT_NEAR(m.argmin, v, 1e-7) << "trial " << trial;
  }
}

TEST(ExtrapolateLimit, HarmonicSequence) {
  std::vector<double> s;
  for (int k = 1; k <= 12; ++k) s.push_back(1.0 + 1.0 / k);
  const auto e = extrapolate_limit(s);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  EXPECT_TRUE(e.stable);
  EXPECT_FALSE(e.diverges);
}

TEST(ExtrapolateLimit, ExponentialLogSlopeIsOne) {
  std::vector<double> s;
  for (int k = 0; k <= 16; ++k) {
    const double t = std::exp2(k / 4.0);
    s.push_back(-(-std::exp(-t)) / std::exp(-t));
  }
  const auto e = extrapolate_limit(s);
  EXPECT_DOUBLE_EQ(e.value, 1.0);
  EXPECT_TRUE(e.stable);
}

TEST(ExtrapolateLimit, LinearGrowthBlowsUp) {
  std::vector<double> s;
  for (int k = 0; k <= 16; ++k) s.push_back(2.0 * std::exp2(k / 4.0));
  const auto e = extrapolate_limit(s);
  EXPECT_TRUE(std::isinf(e.value));
  EXPECT_TRUE(e.diverges);
}

TEST(ExtrapolateLimit, EventuallyConstantIsExact) {
  std::vector<double> s{5, 4, 3, 2.5, 2.25, 2.2, 2.125, 2.1, 2.1, 2.1};
  const auto e = extrapolate_limit(s);
  EXPECT_EQ(e.value, 2.1);
  EXPECT_TRUE(e.stable);
}

TEST(ExtrapolateLimit, RejectsShortSequences) {
  std::vector<double> s{1, 2, 3};
  EXPECT_THROW(extrapolate_limit(s), Error);
}
