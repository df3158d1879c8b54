#pragma once

/// \file
/// Deterministic one-dimensional numerical kernel: adaptive quadrature with
/// certified exponential tails, monotone inversion, grid + golden-section
/// minimization and limit extrapolation. Everything here is a pure function
/// of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "isoratio/error.hpp"

namespace isoratio::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open-or-closed real interval; `hi` may be +infinity.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || std::isnan(hi) || !(lo < hi)) {
      throw Error(ErrorKind::Domain, "interval requires finite lo < hi");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool unbounded() const noexcept { return std::isinf(hi_); }
  double width() const noexcept { return hi_ - lo_; }

 private:
  double lo_;
  double hi_;
};

/// |g(t)| <= scale * exp(-rate * t) for every t >= start.
struct DecayBound {
  double scale;
  double rate;
  double start;

  double remainder_after(double t) const { return scale * std::exp(-rate * t) / rate; }
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_floor = 1e-14;
  std::size_t max_panels = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// One 21-point Kronrod / 10-point Gauss panel on [a, b].
template <typename F>
Segment gk21_panel(F& f, double a, double b, std::size_t& count) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(mid + half * x[i]) + f(mid - half * x[i]);
    kronrod += pair * wk[i];
    if (i % 2 == 1) gauss += pair * wg[i / 2];
  }
  count += 2 * x.size() - 1;
  const double value = half * kronrod;
  const double err = std::max(std::abs(half * (kronrod - gauss)),
                              50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
  return {a, b, value, err};
}

// Globally adaptive bisection: always split the panel with the largest error.
template <typename F>
QuadratureResult adaptive_gk21(F& f, double a, double b, double rel_tol, double abs_floor,
                               std::size_t max_panels) {
  std::size_t count = 0;
  std::priority_queue<Segment> panels;
  panels.push(gk21_panel(f, a, b, count));
  double value = panels.top().value;
  double error = panels.top().error;
  while (error > std::max(rel_tol * std::abs(value), abs_floor) && panels.size() < max_panels) {
    const Segment worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    const Segment left = gk21_panel(f, worst.a, mid, count);
    const Segment right = gk21_panel(f, mid, worst.b, count);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to drop the drift of the running totals.
  value = 0.0;
  error = 0.0;
  std::vector<Segment> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const Segment& seg : all) {
    value += seg.value;
    error += seg.error;
  }
  return {value, error, count};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21-point) quadrature of `f` over `domain`.
///
/// Unbounded domains need a decay certificate for the integrand. The part
/// beyond `decay.start` is integrated in chunks until the analytic remainder
/// bound scale*exp(-rate*b)/rate falls below the target; that bound is part
/// of the reported error. On return
/// `|value - exact| <= error_bound <= max(rel_tol * |value|, abs_floor)`.
template <typename F>
QuadratureResult integrate(F&& f, const Interval& domain, const QuadratureOptions& opts = {},
                           std::optional<DecayBound> decay = std::nullopt) {
  if (!(opts.rel_tol > 0.0) || opts.abs_floor < 0.0) {
    throw Error(ErrorKind::Domain, "quadrature tolerances must be positive");
  }
  const double piece_tol = opts.rel_tol / 4.0;
  QuadratureResult total;

  auto accumulate = [&](double a, double b) {
    const QuadratureResult piece =
        detail::adaptive_gk21(f, a, b, piece_tol, 0.25 * opts.abs_floor, opts.max_panels);
    total.value += piece.value;
    total.error_bound += piece.error_bound;
    total.evaluations += piece.evaluations;
  };
  auto target = [&] { return std::max(opts.rel_tol * std::abs(total.value), opts.abs_floor); };

  if (!domain.unbounded()) {
    accumulate(domain.lo(), domain.hi());
  } else {
    if (!decay || !(decay->rate > 0.0) || !(decay->scale > 0.0) || !std::isfinite(decay->start)) {
      throw Error(ErrorKind::NonIntegrable, "unbounded domain without a valid decay certificate");
    }
    double a = domain.lo();
    if (a < decay->start) {
      accumulate(a, decay->start);
      a = decay->start;
    }
    const double chunk = 4.0 / decay->rate;
    constexpr int kMaxChunks = 4096;
    int chunks = 0;
    double remainder = decay->remainder_after(a);
    while (remainder > 0.5 * target()) {
      if (++chunks > kMaxChunks) {
        throw Error(ErrorKind::ToleranceNotMet, "tail remainder never fell below tolerance");
      }
      accumulate(a, a + chunk);
      a += chunk;
      remainder = decay->remainder_after(a);
    }
    total.error_bound += remainder;
  }

  if (total.error_bound > target()) {
    throw Error(ErrorKind::ToleranceNotMet,
                "quadrature error " + std::to_string(total.error_bound) + " exceeds target " +
                    std::to_string(target()));
  }
  total.evaluations = std::max<std::size_t>(total.evaluations, 1);
  return total;
}

/// Inverts a strictly monotone `f` on `bracket`: returns t with f(t) ~= target.
///
/// The bracket is refined with TOMS 748 down to a few ulps; the residual
/// |f(t) - target| must then be within tol * |target|. An unbounded `hi` is replaced by the
/// first point of a doubling search whose value passes the target.
template <typename F>
double solve_monotone(F&& f, double target, const Interval& bracket, double tol = 1e-10) {
  double a = bracket.lo();
  double fa = f(a) - target;
  double b = bracket.hi();
  double fb = 0.0;

  if (bracket.unbounded()) {
    double step = 1.0;
    bool found = false;
    for (int i = 0; i < 80 && !found; ++i) {
      b = a + step;
      fb = f(b) - target;
      found = (fa < 0.0) != (fb < 0.0) || fb == 0.0;
      step *= 2.0;
    }
    if (!found) {
      throw Error(ErrorKind::NotBracketed, "no sign change found on unbounded bracket");
    }
  } else {
    fb = f(b) - target;
  }

  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) {
    throw Error(ErrorKind::TargetOutOfRange, "target " + std::to_string(target) +
                                                 " outside the range of f on the bracket");
  }

  auto shifted = [&](double x) { return f(x) - target; };
  auto converged = [](double lo, double hi) {
    return std::abs(hi - lo) <=
           4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
  };
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(shifted, a, b, fa, fb, converged, max_iter);
  const double mid = 0.5 * (lo + hi);
  const double residual = std::abs(f(mid) - target);
  if (residual > tol * std::max(std::abs(target), std::numeric_limits<double>::min())) {
    throw Error(ErrorKind::ToleranceNotMet,
                "residual " + std::to_string(residual) + " after bracket collapse");
  }
  return mid;
}

struct Minimum {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t grid_index = 0;  // index of the best coarse-grid point
  std::size_t grid_points = 0;
};

/// Global 1-D minimization: uniform scan over `grid_points` nodes of the
/// closed finite interval, then golden-section refinement on the two cells
/// around the best node. Ties go to the smallest abscissa. The result is
/// never worse than the best grid node.
template <typename F>
Minimum minimize_1d(F&& f, const Interval& domain, std::size_t grid_points = 1024,
                    double tol = 1e-8) {
  if (domain.unbounded()) {
    throw Error(ErrorKind::Domain, "minimize_1d needs a finite interval");
  }
  if (grid_points < 64) {
    throw Error(ErrorKind::Domain, "minimize_1d needs at least 64 grid points");
  }
  const double lo = domain.lo();
  const double h = domain.width() / static_cast<double>(grid_points - 1);
  auto node = [&](std::size_t i) { return i + 1 == grid_points ? domain.hi() : lo + h * i; };

  std::size_t best = 0;
  double best_value = f(node(0));
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double v = f(node(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  double a = node(best == 0 ? 0 : best - 1);
  double c = node(best + 1 == grid_points ? best : best + 1);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (c - a) > tol * std::max(1.0, std::abs(0.5 * (a + c))); ++it) {
    if (f1 <= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - kInvPhi * (c - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (c - a);
      f2 = f(x2);
    }
  }
  const double x_ref = f1 <= f2 ? x1 : x2;
  const double f_ref = std::min(f1, f2);

  Minimum out{node(best), best_value, best, grid_points};
  if (f_ref < best_value) {
    out.argmin = x_ref;
    out.value = f_ref;
  }
  return out;
}

struct LimitOptions {
  double stable_rel_tol = 1e-6;
  /// Blow-up is declared when the second half of the sequence is strictly
  /// increasing and grows at least by this factor.
  double blowup_ratio = 2.0;
};

struct LimitEstimate {
  double value = 0.0;  // +infinity when the sequence blows up
  bool stable = false;
  bool diverges = false;
};

namespace detail {

// Quadratic extrapolation in h = 1/k to h = 0 through three consecutive terms.
inline double richardson3(std::span<const double> seq, std::size_t last) {
  std::array<double, 3> h{};
  std::array<double, 3> s{};
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t idx = last - 2 + j;
    h[j] = 1.0 / static_cast<double>(idx + 1);
    s[j] = seq[idx];
  }
  double result = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) w *= (0.0 - h[j]) / (h[i] - h[j]);
    }
    result += w * s[i];
  }
  return result;
}

}  // namespace detail

/// Estimates lim seq(k) for k -> infinity from terms seq(1..K), K >= 8.
inline LimitEstimate extrapolate_limit(std::span<const double> seq, const LimitOptions& opts = {}) {
  const std::size_t n = seq.size();
  if (n < 8) {
    throw Error(ErrorKind::Domain, "extrapolate_limit needs at least 8 terms");
  }
  for (double v : seq) {
    if (std::isnan(v)) throw Error(ErrorKind::Domain, "sequence contains NaN");
  }

  if (seq[n - 1] == seq[n - 2] && seq[n - 2] == seq[n - 3]) {
    return {seq[n - 1], true, false};
  }

  bool increasing = true;
  for (std::size_t i = n / 2; i + 1 < n; ++i) {
    increasing = increasing && seq[i + 1] > seq[i];
  }
  const double mid = seq[n / 2];
  if (increasing && mid > 0.0 && (std::isinf(seq[n - 1]) || seq[n - 1] / mid >= opts.blowup_ratio)) {
    return {kInf, true, true};
  }

  std::array<double, 3> est{};
  for (std::size_t j = 0; j < 3; ++j) est[j] = detail::richardson3(seq, n - 3 + j);
  const auto [mn, mx] = std::minmax_element(est.begin(), est.end());
  const double scale = std::max({std::abs(*mn), std::abs(*mx), std::numeric_limits<double>::min()});
  const bool stable = (*mx - *mn) <= opts.stable_rel_tol * scale;
  return {est[2], stable, false};
}

}  // namespace isoratio::numerics
