#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "isoratio/surface.hpp"

using namespace isoratio;
using std::numbers::pi;

namespace {

const SurfaceOfRevolution& gaussian() {
  static const SurfaceOfRevolution s(WarpingFunction::gaussian_cusp());
  return s;
}

const SurfaceOfRevolution& exp_cusp() {
  static const SurfaceOfRevolution s(WarpingFunction::exp_cusp());
  return s;
}

// -f''/f with f'' from the five-point central stencil on values of f.
double fd_curvature(const WarpingFunction& f, double t, double h = 1e-3) {
  const double d2 = (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) / (12 * h * h);
  return -d2 / f(t);
}

}  // namespace

TEST(Warping, NormalizedAtThePole) {
  for (const WarpingFunction& f : {WarpingFunction::exp_cusp(), WarpingFunction::exp_cusp(1.0),
                                   WarpingFunction::gaussian_cusp(), WarpingFunction::power_cusp(1.5)}) {
    EXPECT_EQ(f(0.0), 0.0) << f.family_name();
    EXPECT_NEAR(f.deriv1(0.0), 1.0, 1e-12) << f.family_name();
  }
}

TEST(Warping, ExpCuspBlendIsC2AtTheJunction) {
  for (double t1 : {1.0, 3.0, 8.0, 10.0}) {
    const ExpCusp f(t1);
    const double below = std::nextafter(t1, 0.0);
    EXPECT_NEAR(f.value(below), std::exp(-t1), 1e-15 + 1e-12 * std::exp(-t1));
    EXPECT_NEAR(f.deriv1(below), -std::exp(-t1), 1e-12);
    EXPECT_NEAR(f.deriv2(below), std::exp(-t1), 1e-10);
  }
}

TEST(Warping, PowerCuspWithTwoIsGaussian) {
  const PowerCusp p(2.0);
  const GaussianCusp g;
  for (double t : {0.1, 0.7, 1.3, 2.9}) {
    EXPECT_NEAR(p.value(t), g.value(t), 1e-15);
    EXPECT_NEAR(p.deriv1(t), g.deriv1(t), 1e-14);
    EXPECT_NEAR(p.deriv2(t), g.deriv2(t), 1e-13);
  }
  EXPECT_THROW(PowerCusp(1.0), Error);
}

TEST(Warping, TabulatedValidation) {
  EXPECT_THROW(WarpingFunction::tabulated({{0.5, 0.0}, {1.0, 0.5}}), Error);
  EXPECT_THROW(WarpingFunction::tabulated({{0.0, 0.0}, {1.0, 0.5}, {0.9, 0.3}}), Error);
  EXPECT_THROW(WarpingFunction::tabulated({{0.0, 0.0}, {1.0, -0.5}}), Error);
  EXPECT_THROW(WarpingFunction::tabulated({{0.0, 0.0}, {1.0, 0.5}}, 0.0), Error);
  const auto f = WarpingFunction::tabulated({{0.0, 0.0}, {1.0, 0.6}, {2.0, 0.3}}, 2.0);
  EXPECT_NEAR(f(1.0), 0.6, 1e-15);
  EXPECT_NEAR(f(3.0), 0.3 * std::exp(-2.0), 1e-15);
}

TEST(Surface, InfiniteOrInvalidDecayIsRejected) {
  // The certificate claims a decay that f does not have.
  EXPECT_THROW(SurfaceOfRevolution(WarpingFunction(GaussianCusp{}, DecayCertificate{1e-3, 1.0, 1.0})), Error);
  EXPECT_THROW(SurfaceOfRevolution(WarpingFunction::gaussian_cusp(), 0), Error);
}

TEST(Curvature, ExpCuspIsMinusOneBeyondJunction) {
  const double t1 = std::get<ExpCusp>(exp_cusp().warping().family()).t1();
  for (int i = 0; i < 64; ++i) {
    const double t = t1 + 0.01 + 0.5 * i;
    EXPECT_NEAR(curvature(exp_cusp(), t), -1.0, 1e-8) << t;
  }
}

TEST(Curvature, GaussianClosedFormAndFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    const double k = curvature(gaussian(), t);
    EXPECT_NEAR(k, 6 - 4 * t * t, 1e-12 * std::max(1.0, std::abs(k)));
    EXPECT_NEAR(k, fd_curvature(gaussian().warping(), t), 1e-6 * std::max(1.0, std::abs(k)));
  }
}

TEST(Curvature, MatchesFiniteDifferencesOnExpCusp) {
  std::mt19937_64 rng(6);
  const double T0 = exp_cusp().warping().decay().start;
  std::uniform_real_distribution<double> u(0.1, T0);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    const double k = curvature(exp_cusp(), t);
    EXPECT_NEAR(k, fd_curvature(exp_cusp().warping(), t), 1e-6 * std::max(1.0, std::abs(k))) << t;
  }
}

TEST(Curvature, PoleSingularity) {
  try {
    curvature(gaussian(), 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleSingularity);
  }
}

TEST(SphereArea, ClosedForms) {
  EXPECT_NEAR(sphere_area(exp_cusp(), 9.0), 2 * pi * std::exp(-9.0), 1e-16);
  EXPECT_NEAR(sphere_area(gaussian(), 1.0), 2 * pi * std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(gaussian().omega_n(), 2 * pi);
  EXPECT_NEAR(unit_sphere_measure(2), 4 * pi, 1e-13);
  EXPECT_NEAR(unit_sphere_measure(3), 2 * pi * pi, 1e-13);
}

TEST(SphereArea, VanishesFarOut) {
  EXPECT_LT(sphere_area(exp_cusp(), 40.0), 1e-6);
  EXPECT_LT(sphere_area(gaussian(), 40.0), 1e-6);
}

TEST(Volumes, GaussianClosedForms) {
  EXPECT_NEAR(gaussian().total_volume(), pi, 1e-12);
  EXPECT_EQ(disk_volume(gaussian(), 0.0), 0.0);
  EXPECT_EQ(tail_volume(gaussian(), 0.0), gaussian().total_volume());
  const double r = std::sqrt(std::log(2.0));
  EXPECT_NEAR(disk_volume(gaussian(), r), pi / 2, 1e-12);
  EXPECT_NEAR(tail_volume(gaussian(), 1.0), pi * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(radius_of_disk_volume(gaussian(), pi / 2), r, 1e-10);
}

TEST(Volumes, ExpCuspTailIsExponential) {
  for (double t : {8.5, 12.0, 20.0}) {
    EXPECT_NEAR(tail_volume(exp_cusp(), t), 2 * pi * std::exp(-t), 1e-11 * 2 * pi * std::exp(-t));
  }
}

TEST(Volumes, HigherDimensionalGaussianBall) {
  // n = 2: A = 4 pi int t^2 e^{-2t^2} dt = 4 pi sqrt(pi/2) / 8.
  const SurfaceOfRevolution s(WarpingFunction::gaussian_cusp(), 2);
  EXPECT_NEAR(s.total_volume(), 4 * pi * std::sqrt(pi / 2) / 8, 1e-11);
}

TEST(Volumes, PartitionAndRoundTrip) {
  std::mt19937_64 rng(9);
  for (const SurfaceOfRevolution* s : {&gaussian(), &exp_cusp()}) {
    const double A = s->total_volume();
    std::uniform_real_distribution<double> ut(0.0, 3.0 * s->warping().decay().start);
    std::uniform_real_distribution<double> uv(1e-6 * A, (1 - 1e-6) * A);
    for (int i = 0; i < 50; ++i) {
      const double t = ut(rng);
      EXPECT_NEAR(disk_volume(*s, t) + tail_volume(*s, t), A, 1e-9 * A);
      const double V = uv(rng);
      EXPECT_NEAR(disk_volume(*s, radius_of_disk_volume(*s, V)), V, 1e-8 * A);
    }
  }
}

TEST(Volumes, InverseIsMonotoneAndRejectsEnds) {
  double prev = 0.0;
  for (double frac : {1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999}) {
    const double t = radius_of_disk_volume(gaussian(), frac * pi);
    EXPECT_GT(t, prev);
    prev = t;
  }
  EXPECT_LT(radius_of_disk_volume(gaussian(), 1e-12), 1e-5);
  const double A = gaussian().total_volume();
  for (double bad : {0.0, A, A + 1.0}) {
    try {
      radius_of_disk_volume(gaussian(), bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::TargetOutOfRange);
    }
  }
}

TEST(Conditions, ExpCuspSatisfiesAll) {
  const ConditionsReport r = check_conditions(exp_cusp());
  EXPECT_TRUE(r.j_holds);
  EXPECT_TRUE(r.jj_holds);
  EXPECT_TRUE(r.jjj_holds);
  EXPECT_TRUE(r.jv_holds);
  EXPECT_TRUE(r.v_holds);
  for (const char* c : {"j", "jj", "jjj", "jv", "v"}) {
    EXPECT_TRUE(std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const Witness& w) { return w.condition == c; }))
        << c;
  }
}

TEST(Conditions, GaussianSignChangeAtInverseSqrtTwo) {
  const ConditionsReport r = check_conditions(gaussian());
  EXPECT_TRUE(r.all_hold());
  EXPECT_NEAR(r.t1, 1 / std::sqrt(2.0), 1e-10);
}

TEST(Conditions, DoubleBumpViolatesJ) {
  const SurfaceOfRevolution s(WarpingFunction::tabulated(
      {{0, 0}, {0.5, 0.45}, {1, 0.6}, {1.5, 0.35}, {2, 0.3}, {2.5, 0.5}, {3, 0.4}, {3.5, 0.2}, {4, 0.1}}));
  const ConditionsReport r = check_conditions(s);
  EXPECT_FALSE(r.j_holds);
  EXPECT_FALSE(r.all_hold());
}
