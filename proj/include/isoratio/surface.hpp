#pragma once

/// \file
/// Finite-volume rotationally symmetric manifold M^{n+1} with metric
/// dt^2 + f(t)^2 g_{S^n}: curvature, geodesic-sphere areas, the volume maps
/// t -> vol(B(p,t)) and t -> vol(M - B(p,t)), their inverses, and the
/// structural checks on f used by the examples of cusp surfaces.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoratio/error.hpp"
#include "isoratio/numerics.hpp"
#include "isoratio/warping.hpp"

namespace isoratio {

struct Tolerances {
  double quadrature = 1e-12;
  double root = 1e-10;
  double minimize = 1e-8;
};

/// n-dimensional measure of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
inline double unit_sphere_measure(int n) {
  const double k = 0.5 * (n + 1);
  return 2.0 * std::pow(std::numbers::pi, k) / std::tgamma(k);
}

class SurfaceOfRevolution {
 public:
  explicit SurfaceOfRevolution(WarpingFunction warping, int n = 1, Tolerances tol = {})
      : warping_(std::move(warping)), n_(n), tol_(tol) {
    if (n_ < 1) throw Error(ErrorKind::InvalidSurface, "hypersurface dimension n must be >= 1");
    omega_n_ = unit_sphere_measure(n_);
    validate_warping();
    total_volume_ = integrate_tail(0.0);
    if (!(total_volume_ > 0.0) || !std::isfinite(total_volume_)) {
      throw Error(ErrorKind::InvalidSurface, "total volume is not finite and positive");
    }
  }

  int n() const noexcept { return n_; }
  const WarpingFunction& warping() const noexcept { return warping_; }
  double omega_n() const noexcept { return omega_n_; }
  double total_volume() const noexcept { return total_volume_; }
  const Tolerances& tolerances() const noexcept { return tol_; }

  /// omega_n f(t)^n; also the density of the volume map.
  double area_at(double t) const { return omega_n_ * std::pow(warping_(t), n_); }

  double integrate_disk(double t) const {
    if (t <= 0.0) return 0.0;
    auto density = [this](double r) { return area_at(r); };
    return numerics::integrate(density, numerics::Interval(0.0, t), quad_options()).value;
  }

  double integrate_tail(double t) const {
    auto density = [this](double r) { return area_at(r); };
    const DecayCertificate& d = warping_.decay();
    const numerics::DecayBound bound{omega_n_ * std::pow(d.scale, n_), n_ * d.rate, d.start};
    return numerics::integrate(density, numerics::Interval(t, numerics::kInf), quad_options(), bound)
        .value;
  }

 private:
  numerics::QuadratureOptions quad_options() const {
    return {tol_.quadrature, 0.0, 4000};
  }

  void validate_warping() const {
    const WarpingFunction& f = warping_;
    if (std::abs(f(0.0)) > 1e-12) {
      throw Error(ErrorKind::InvalidSurface, "warping function must vanish at the pole");
    }
    // Pole slope from f(h)/h: a difference quotient of the odd extension is only O(h) accurate.
    constexpr double kPoleStep = 1e-8;
    if (std::abs(f(kPoleStep) / kPoleStep - f.amplitude()) > 1e-6 * f.amplitude()) {
      throw Error(ErrorKind::InvalidSurface, "warping function must have f'(0) = 1 at the pole");
    }
    const DecayCertificate& d = f.decay();
    if (!(d.scale > 0.0) || !(d.rate > 0.0) || !std::isfinite(d.start) || d.start < 0.0) {
      throw Error(ErrorKind::InvalidSurface, "decay certificate needs M > 0, alpha > 0, T0 >= 0");
    }
    const double t_end = d.start + 40.0 / d.rate;
    constexpr int kSamples = 2048;
    for (int i = 1; i <= kSamples; ++i) {
      const double t = t_end * i / kSamples;
      const double v = f(t);
      // Exact zeros are tolerated only as underflow inside the certified tail.
      if (!(v > 0.0) && !(v == 0.0 && t >= d.start)) {
        throw Error(ErrorKind::InvalidSurface, "warping function not positive at t = " + std::to_string(t));
      }
      if (t >= d.start && v > d.scale * std::exp(-d.rate * t) * (1.0 + 1e-9)) {
        throw Error(ErrorKind::InvalidSurface,
                    "decay certificate violated at t = " + std::to_string(t));
      }
    }
  }

  WarpingFunction warping_;
  int n_;
  Tolerances tol_;
  double omega_n_ = 0.0;
  double total_volume_ = 0.0;
};

/// Sectional curvature of the radial planes, -f''/f.
inline double curvature(const SurfaceOfRevolution& s, double t, double pole_eps = 1e-8) {
  if (!(t >= pole_eps)) {
    throw Error(ErrorKind::PoleSingularity, "curvature requested at t = " + std::to_string(t));
  }
  return -s.warping().deriv2(t) / s.warping()(t);
}

/// Area of the geodesic sphere of radius t about the pole (length 2 pi f(t) for n = 1).
inline double sphere_area(const SurfaceOfRevolution& s, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "sphere_area needs t > 0");
  return s.area_at(t);
}

/// Volume of the geodesic ball of radius t.
inline double disk_volume(const SurfaceOfRevolution& s, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "disk_volume needs t >= 0");
  return s.integrate_disk(t);
}

/// Volume outside the geodesic ball of radius t, integrated directly.
inline double tail_volume(const SurfaceOfRevolution& s, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "tail_volume needs t >= 0");
  if (t == 0.0) return s.total_volume();
  return s.integrate_tail(t);
}

/// Radius t with disk_volume(t) = V, 0 < V < A. Volumes above A/2 are
/// inverted through the tail map for accuracy.
inline double radius_of_disk_volume(const SurfaceOfRevolution& s, double V) {
  const double A = s.total_volume();
  if (!(V > 0.0) || !(V < A)) {
    throw Error(ErrorKind::TargetOutOfRange, "disk volume must lie in ]0, A[");
  }
  const numerics::Interval half_line(0.0, numerics::kInf);
  const double tol = s.tolerances().root;
  if (V <= 0.5 * A) {
    return numerics::solve_monotone([&](double t) { return disk_volume(s, t); }, V, half_line, tol);
  }
  return numerics::solve_monotone([&](double t) { return tail_volume(s, t); }, A - V, half_line, tol);
}

/// Radius t with tail_volume(t) = W, 0 < W < A.
inline double radius_of_tail_volume(const SurfaceOfRevolution& s, double W) {
  const double A = s.total_volume();
  if (!(W > 0.0) || !(W < A)) {
    throw Error(ErrorKind::TargetOutOfRange, "tail volume must lie in ]0, A[");
  }
  const numerics::Interval half_line(0.0, numerics::kInf);
  const double tol = s.tolerances().root;
  if (W <= 0.5 * A) {
    return numerics::solve_monotone([&](double t) { return tail_volume(s, t); }, W, half_line, tol);
  }
  return numerics::solve_monotone([&](double t) { return disk_volume(s, t); }, A - W, half_line, tol);
}

struct Witness {
  std::string condition;
  double t;
  double value;
};

/// Sampled evidence for the structural conditions on f:
///  (j)   f' > 0 before a single point t1, f' < 0 after;
///  (jj)  K' <= 0 for large t;
///  (jjj) finite total volume;
///  (jv)  finite tail volumes consistent with the disk volumes;
///  (v)   some tau < t0 with t0 f(tau) > f(t0), for every large t0.
struct ConditionsReport {
  bool j_holds = false;
  bool jj_holds = false;
  bool jjj_holds = false;
  bool jv_holds = false;
  bool v_holds = false;
  double t1 = std::numeric_limits<double>::quiet_NaN();
  double jj_threshold = std::numeric_limits<double>::quiet_NaN();
  double v_t0 = std::numeric_limits<double>::quiet_NaN();  // smallest t0 >= 5 with a witness
  std::vector<Witness> witnesses;

  bool all_hold() const { return j_holds && jj_holds && jjj_holds && jv_holds && v_holds; }
};

inline ConditionsReport check_conditions(const SurfaceOfRevolution& s) {
  ConditionsReport rep;
  const WarpingFunction& f = s.warping();
  const DecayCertificate& d = f.decay();
  auto witness = [&](std::string c, double t, double v) { rep.witnesses.push_back({std::move(c), t, v}); };

  // (j): sign pattern of f' on a fine grid.
  {
    const double t_end = std::max(2.0 * d.start, 8.0);
    constexpr int kSamples = 4096;
    std::vector<std::pair<double, double>> changes;  // (t_left, t_right) of each sign change
    double prev_t = t_end / kSamples;
    double prev = f.deriv1(prev_t);
    const bool starts_up = prev > 0.0;
    witness("j", prev_t, prev);
    for (int i = 2; i <= kSamples; ++i) {
      const double t = t_end * i / kSamples;
      const double v = f.deriv1(t);
      if (v != 0.0 && prev != 0.0 && (v > 0.0) != (prev > 0.0)) {
        changes.emplace_back(prev_t, t);
        witness("j", t, v);
      }
      if (v != 0.0) {
        prev = v;
        prev_t = t;
      }
    }
    witness("j", t_end, f.deriv1(t_end));
    rep.j_holds = starts_up && changes.size() == 1 && f.deriv1(t_end) < 0.0;
    if (!changes.empty()) {
      auto [a, b] = changes.front();
      for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (a + b);
        ((f.deriv1(m) > 0.0) == (f.deriv1(a) > 0.0) ? a : b) = m;
      }
      rep.t1 = 0.5 * (a + b);
    }
  }

  // (jj): K' <= 0 on ]max(t1 + 1, T0), +8].
  {
    const double base = rep.j_holds ? std::max(rep.t1 + 1.0, d.start) : std::max(d.start, 1.0);
    rep.jj_threshold = base;
    const double allowance = f.analytic_derivatives() ? 1e-6 : 1e-3;
    bool ok = true;
    constexpr int kSamples = 64;
    for (int i = 0; i < kSamples; ++i) {
      const double t = base + 8.0 * (i + 1) / kSamples;
      if (!(f(t) > 1e-250)) break;
      const double h = 1e-3 * std::max(1.0, t);
      const double dk = (curvature(s, t + h) - curvature(s, t - h)) / (2 * h);
      const double scale = std::max(1.0, std::abs(curvature(s, t)));
      if (!(dk <= allowance * scale)) {
        ok = false;
        witness("jj", t, dk);
      }
      if (i == 0 || i == kSamples - 1) witness("jj", t, dk);
    }
    rep.jj_holds = ok;
  }

  // (jjj): total volume by certified quadrature.
  const double A = s.total_volume();
  rep.jjj_holds = std::isfinite(A) && A > 0.0;
  witness("jjj", 0.0, A);

  // (jv): tail volumes finite and complementary to disk volumes.
  {
    bool ok = true;
    for (double t : {0.5 * d.start + 0.5, d.start + 1.0, 2.0 * d.start + 2.0}) {
      const double tail = tail_volume(s, t);
      const double disk = disk_volume(s, t);
      const bool good = std::isfinite(tail) && tail > 0.0 && std::abs(tail + disk - A) <= 1e-9 * A;
      ok = ok && good;
      witness("jv", t, tail);
    }
    rep.jv_holds = ok;
  }

  // (v): smallest t0 >= 5 (step 0.5) with t0 f(tau) > f(t0), and it keeps holding up to 105.
  {
    bool found = false;
    bool persistent = true;
    for (int k = 0; k <= 200; ++k) {
      const double t0 = 5.0 + 0.5 * k;
      double best_tau = 0.0;
      double best_f = 0.0;
      constexpr int kGrid = 256;
      for (int i = 1; i < kGrid; ++i) {
        const double tau = t0 * i / kGrid;
        const double v = f(tau);
        if (v > best_f) {
          best_f = v;
          best_tau = tau;
        }
      }
      const bool holds = t0 * best_f > f(t0);
      if (holds && !found) {
        found = true;
        rep.v_t0 = t0;
        witness("v", best_tau, t0 * best_f - f(t0));
      } else if (!holds && found) {
        persistent = false;
        witness("v", t0, t0 * best_f - f(t0));
      }
    }
    rep.v_holds = found && persistent;
    if (!found) witness("v", 105.0, 0.0);
  }
  return rep;
}

}  // namespace isoratio
