#pragma once

/// \file
/// Warping functions f(t) of rotationally symmetric metrics
/// g = dt^2 + f(t)^2 g_{S^n}. All families are normalized at the pole by
/// f(0) = 0, f'(0) = amplitude (1 for a smooth pole) and carry an exponential
/// decay certificate f(t) <= M e^{-alpha t} for t >= T0.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "isoratio/error.hpp"
#include "isoratio/numerics.hpp"

namespace isoratio {

/// f(t) <= scale * exp(-rate * t) for t >= start.
using DecayCertificate = numerics::DecayBound;

/// Exponential cusp: f = e^{-t} for t >= t1 and a quintic blend on [0, t1]
/// fixed by f(0)=0, f'(0)=1, f''(0)=0 and C^2 contact with e^{-t} at t1.
class ExpCusp {
 public:
  explicit ExpCusp(double t1 = 8.0) : t1_(t1) {
    if (!(t1 > 0.0) || !std::isfinite(t1)) {
      throw Error(ErrorKind::Domain, "ExpCusp needs t1 > 0");
    }
    // p(t) = t + c3 t^3 + c4 t^4 + c5 t^5; match value, slope, second derivative at t1.
    const double e = std::exp(-t1);
    const double t = t1;
    double m[3][4] = {
        {t * t * t, t * t * t * t, t * t * t * t * t, e - t},
        {3 * t * t, 4 * t * t * t, 5 * t * t * t * t, -e - 1.0},
        {6 * t, 12 * t * t, 20 * t * t * t, e},
    };
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r) {
        if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
      }
      std::swap(m[col], m[piv]);
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const double factor = m[r][col] / m[col][col];
        for (int k = col; k < 4; ++k) m[r][k] -= factor * m[col][k];
      }
    }
    c_ = {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
    // Taylor coefficients of the same quintic about t1; the monomial form
    // cancels badly near t1 where the blend is ~e^{-t1}.
    d_ = {c_[0] + t * (4 * c_[1] + 10 * t * c_[2]), c_[1] + 5 * t * c_[2], c_[2]};
    e1_ = e;
  }

  double t1() const noexcept { return t1_; }
  const std::array<double, 3>& blend_coefficients() const noexcept { return c_; }

  double value(double t) const {
    if (t >= t1_) return std::exp(-t);
    if (t < 0.5 * t1_) return t + t * t * t * (c_[0] + t * (c_[1] + t * c_[2]));
    const double s = t - t1_;
    return e1_ * (1.0 - s + 0.5 * s * s) + s * s * s * (d_[0] + s * (d_[1] + s * d_[2]));
  }
  double deriv1(double t) const {
    if (t >= t1_) return -std::exp(-t);
    if (t < 0.5 * t1_) return 1.0 + t * t * (3 * c_[0] + t * (4 * c_[1] + 5 * t * c_[2]));
    const double s = t - t1_;
    return e1_ * (s - 1.0) + s * s * (3 * d_[0] + s * (4 * d_[1] + 5 * s * d_[2]));
  }
  double deriv2(double t) const {
    if (t >= t1_) return std::exp(-t);
    if (t < 0.5 * t1_) return t * (6 * c_[0] + t * (12 * c_[1] + 20 * t * c_[2]));
    const double s = t - t1_;
    return e1_ + s * (6 * d_[0] + s * (12 * d_[1] + 20 * s * d_[2]));
  }
  DecayCertificate default_decay() const { return {1.0, 1.0, t1_}; }
  static constexpr std::string_view name() { return "exp_cusp"; }

 private:
  double t1_;
  std::array<double, 3> c_{};
  std::array<double, 3> d_{};
  double e1_ = 0.0;
};

/// f(t) = t * exp(-t^2).
struct GaussianCusp {
  double value(double t) const { return t * std::exp(-t * t); }
  double deriv1(double t) const { return std::exp(-t * t) * (1.0 - 2.0 * t * t); }
  double deriv2(double t) const { return std::exp(-t * t) * (4.0 * t * t * t - 6.0 * t); }
  DecayCertificate default_decay() const { return {1.0, 1.0, 1.0}; }
  static constexpr std::string_view name() { return "gaussian_cusp"; }
};

/// f(t) = t * exp(-t^a), a > 1. a = 2 reproduces GaussianCusp.
class PowerCusp {
 public:
  explicit PowerCusp(double a) : a_(a) {
    if (!(a > 1.0) || !std::isfinite(a)) {
      throw Error(ErrorKind::Domain, "PowerCusp needs exponent a > 1");
    }
  }
  double exponent() const noexcept { return a_; }

  double value(double t) const { return t * std::exp(-std::pow(t, a_)); }
  double deriv1(double t) const {
    const double u = std::pow(t, a_);
    return std::exp(-u) * (1.0 - a_ * u);
  }
  double deriv2(double t) const {
    if (t == 0.0) return 0.0;
    const double u = std::pow(t, a_);
    return -a_ * std::pow(t, a_ - 1.0) * std::exp(-u) * (1.0 + a_ - a_ * u);
  }
  // t^a - t/2 - ln t >= t/2 - ln t > 0 for t >= 1, so t e^{-t^a} <= e^{-t/2} there.
  DecayCertificate default_decay() const { return {1.0, 0.5, 1.0}; }
  static constexpr std::string_view name() { return "power_cusp"; }

 private:
  double a_;
};

struct Knot {
  double t;
  double f;
};

/// Shape-preserving piecewise cubic (PCHIP) through knots starting at (0, 0),
/// with slope 1 at the pole, continued past the last knot by
/// f_last * exp(-tail_rate * (t - t_last)). Derivatives by central differences.
class Tabulated {
 public:
  Tabulated(std::vector<Knot> knots, double tail_rate) : knots_(std::move(knots)), rate_(tail_rate) {
    if (knots_.size() < 2) {
      throw Error(ErrorKind::InvalidSurface, "tabulated warping needs at least two knots");
    }
    if (knots_.front().t != 0.0 || knots_.front().f != 0.0) {
      throw Error(ErrorKind::InvalidSurface, "first knot must be the pole (0, 0)");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (!(knots_[i].t > knots_[i - 1].t)) {
        throw Error(ErrorKind::InvalidSurface, "knot abscissae must be strictly increasing");
      }
      if (!(knots_[i].f > 0.0)) {
        throw Error(ErrorKind::InvalidSurface, "knot values must be positive away from the pole");
      }
    }
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
      throw Error(ErrorKind::InvalidSurface,
                  "tail_rate must be positive (a non-decaying tail has infinite volume)");
    }
    build_slopes();
  }

  const std::vector<Knot>& knots() const noexcept { return knots_; }
  double tail_rate() const noexcept { return rate_; }

  double value(double t) const {
    if (t < 0.0) return -value(-t);
    const Knot& last = knots_.back();
    if (t >= last.t) return last.f * std::exp(-rate_ * (t - last.t));
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                     [](double x, const Knot& k) { return x < k.t; });
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    const double h = knots_[i + 1].t - knots_[i].t;
    const double s = (t - knots_[i].t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * knots_[i].f + h10 * h * slopes_[i] + h01 * knots_[i + 1].f + h11 * h * slopes_[i + 1];
  }
  double deriv1(double t) const {
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (value(t + h) - value(t - h)) / (2 * h);
  }
  double deriv2(double t) const {
    const double h = 1e-4 * std::max(1.0, std::abs(t));
    return (value(t + h) - 2 * value(t) + value(t - h)) / (h * h);
  }
  DecayCertificate default_decay() const {
    const Knot& last = knots_.back();
    // Beyond the last knot f = f_last e^{-rate (t - t_last)} exactly.
    return {last.f * std::exp(rate_ * last.t), rate_, last.t};
  }
  static constexpr std::string_view name() { return "tabulated"; }

 private:
  void build_slopes() {
    const std::size_t n = knots_.size();
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = knots_[i + 1].t - knots_[i].t;
      delta[i] = (knots_[i + 1].f - knots_[i].f) / h[i];
    }
    slopes_.assign(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2 * h[k] + h[k - 1];
      const double w2 = h[k] + 2 * h[k - 1];
      slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    slopes_.front() = 1.0;
    slopes_.back() = -rate_ * knots_.back().f;
  }

  std::vector<Knot> knots_;
  double rate_;
  std::vector<double> slopes_;
};

/// A warping function: one of the supported families, an amplitude factor
/// and the decay certificate used for tail integrals.
class WarpingFunction {
 public:
  using Family = std::variant<ExpCusp, GaussianCusp, PowerCusp, Tabulated>;

  explicit WarpingFunction(Family family)
      : family_(std::move(family)),
        decay_(std::visit([](const auto& f) { return f.default_decay(); }, family_)) {}

  WarpingFunction(Family family, DecayCertificate decay) : family_(std::move(family)), decay_(decay) {}

  static WarpingFunction exp_cusp(double t1 = 8.0) { return WarpingFunction(ExpCusp(t1)); }
  static WarpingFunction gaussian_cusp() { return WarpingFunction(GaussianCusp{}); }
  static WarpingFunction power_cusp(double a) { return WarpingFunction(PowerCusp(a)); }
  static WarpingFunction tabulated(std::vector<Knot> knots, double tail_rate = 1.0) {
    return WarpingFunction(Tabulated(std::move(knots), tail_rate));
  }

  /// Same profile multiplied by c > 0; the pole becomes conical unless c = 1.
  WarpingFunction scaled(double c) const {
    if (!(c > 0.0)) throw Error(ErrorKind::Domain, "scale factor must be positive");
    WarpingFunction out = *this;
    out.amplitude_ *= c;
    out.decay_.scale *= c;
    return out;
  }

  double operator()(double t) const { return value(t); }
  double value(double t) const {
    return amplitude_ * std::visit([t](const auto& f) { return f.value(t); }, family_);
  }
  double deriv1(double t) const {
    return amplitude_ * std::visit([t](const auto& f) { return f.deriv1(t); }, family_);
  }
  double deriv2(double t) const {
    return amplitude_ * std::visit([t](const auto& f) { return f.deriv2(t); }, family_);
  }

  bool analytic_derivatives() const { return !std::holds_alternative<Tabulated>(family_); }
  std::string_view family_name() const {
    return std::visit([](const auto& f) { return f.name(); }, family_);
  }
  const Family& family() const noexcept { return family_; }
  const DecayCertificate& decay() const noexcept { return decay_; }
  double amplitude() const noexcept { return amplitude_; }

 private:
  Family family_;
  DecayCertificate decay_;
  double amplitude_ = 1.0;
};

}  // namespace isoratio
