#pragma once

/// \file
/// Isoperimetric profile over regions bounded by geodesic spheres about the
/// pole, the small-volume ratio I(V)/V, and a brute-force annulus oracle used
/// to falsify the restriction to single-sphere regions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "isoratio/error.hpp"
#include "isoratio/numerics.hpp"
#include "isoratio/surface.hpp"

namespace isoratio {

enum class CandidateKind { Disk, Complement, Annulus };

constexpr std::string_view to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::Disk: return "disk";
    case CandidateKind::Complement: return "complement";
    case CandidateKind::Annulus: return "annulus";
  }
  return "unknown";
}

/// Rotationally symmetric region: a ball, the outside of a ball, or a shell.
/// The perimeter is the sum of the sphere areas over `boundary_radii`.
struct CandidateRegion {
  CandidateKind kind = CandidateKind::Disk;
  double volume = 0.0;
  double perimeter = 0.0;
  std::vector<double> boundary_radii;

  double radius() const { return boundary_radii.back(); }
};

struct ProfilePoint {
  double V = 0.0;
  double value = 0.0;
  CandidateRegion best;
};

/// I_M(V) restricted to regions bounded by one geodesic sphere: the cheaper of
/// the ball of volume V and the outside of the ball of volume A - V.
///
/// Both spheres are located from W = min(V, A - V) (one through the disk map,
/// one through the tail map), so V and A - V see the same pair of spheres.
inline ProfilePoint profile(const SurfaceOfRevolution& s, double V) {
  const double A = s.total_volume();
  if (!(V > 0.0) || !(V < A)) {
    throw Error(ErrorKind::TargetOutOfRange, "profile volume must lie in ]0, A[");
  }
  const bool lower = V <= 0.5 * A;
  const double W = lower ? V : A - V;
  const double t_small_disk = radius_of_disk_volume(s, W);
  const double t_small_tail = radius_of_tail_volume(s, W);

  CandidateRegion by_disk_map{lower ? CandidateKind::Disk : CandidateKind::Complement, V,
                              sphere_area(s, t_small_disk), {t_small_disk}};
  CandidateRegion by_tail_map{lower ? CandidateKind::Complement : CandidateKind::Disk, V,
                              sphere_area(s, t_small_tail), {t_small_tail}};

  const CandidateRegion& disk = lower ? by_disk_map : by_tail_map;
  const CandidateRegion& comp = lower ? by_tail_map : by_disk_map;
  const CandidateRegion& best = comp.perimeter < disk.perimeter ? comp : disk;
  return {V, best.perimeter, best};
}

inline std::vector<ProfilePoint> profile_sweep(const SurfaceOfRevolution& s, const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw Error(ErrorKind::Domain, "profile grid must be sorted");
  }
  std::vector<ProfilePoint> out;
  out.reserve(grid.size());
  for (double V : grid) out.push_back(profile(s, V));
  return out;
}

/// Samples area(t)^area_power / tail(t)^volume_power at t_k = T0 * 2^{k/4},
/// k = 0..16, stopping early once f underflows.
struct SmallVolumeSamples {
  std::vector<double> radii;
  std::vector<double> values;
};

inline SmallVolumeSamples small_volume_samples(const SurfaceOfRevolution& s, double area_power,
                                               double volume_power) {
  const double t0 = std::max(s.warping().decay().start, 1.0);
  SmallVolumeSamples out;
  for (int k = 0; k <= 16; ++k) {
    const double t = t0 * std::exp2(k / 4.0);
    const double area = sphere_area(s, t);
    if (!(area > 1e-250)) break;
    out.radii.push_back(t);
    out.values.push_back(std::pow(area, area_power) / std::pow(tail_volume(s, t), volume_power));
  }
  return out;
}

struct LiminfEstimate {
  double value = 0.0;  // +infinity when the ratio blows up
  bool stable = false;
  std::optional<double> analytic_value;  // limit of -n f'/f when f' is analytic
  SmallVolumeSamples samples;
};

/// liminf_{V->0} I(V)/V, evaluated on the outer regions {t > t_k} where the
/// profile is attained for small V on cusps.
inline LiminfEstimate liminf_small_volume_ratio(const SurfaceOfRevolution& s,
                                                const numerics::LimitOptions& opts = {}) {
  LiminfEstimate out;
  out.samples = small_volume_samples(s, 1.0, 1.0);
  const std::vector<double>& seq = out.samples.values;
  if (seq.size() < 8) {
    throw Error(ErrorKind::Unstable, "warping function underflows before 8 samples");
  }
  const numerics::LimitEstimate est = numerics::extrapolate_limit(seq, opts);
  out.value = est.value;
  out.stable = est.stable;

  if (!est.stable) {
    bool monotone_up = true;
    bool monotone_down = true;
    for (std::size_t i = seq.size() - 8; i + 1 < seq.size(); ++i) {
      monotone_up = monotone_up && seq[i + 1] >= seq[i];
      monotone_down = monotone_down && seq[i + 1] <= seq[i];
    }
    if (monotone_up || monotone_down) {
      throw Error(ErrorKind::Unstable, "small-volume ratio does not settle");
    }
    out.value = *std::min_element(seq.end() - 8, seq.end());
  }

  if (s.warping().analytic_derivatives()) {
    std::vector<double> log_slope;
    for (double t : out.samples.radii) {
      log_slope.push_back(-s.n() * s.warping().deriv1(t) / s.warping()(t));
    }
    const numerics::LimitEstimate alt = numerics::extrapolate_limit(log_slope, opts);
    out.analytic_value = alt.value;
    const bool agree = (std::isinf(alt.value) && std::isinf(out.value)) ||
                       std::abs(alt.value - out.value) <= 1e-4 * std::abs(out.value);
    if (out.stable && !agree) {
      throw Error(ErrorKind::Unstable, "volume ratio and -n f'/f limits disagree");
    }
  }
  return out;
}

/// Best shell {t_a < t < t_b} of volume V, scanning the inner volume on
/// `grid_size` points of [0, A - V[. The first node is the ball itself.
inline CandidateRegion annulus_oracle(const SurfaceOfRevolution& s, double V, std::size_t grid_size = 128) {
  const double A = s.total_volume();
  if (!(V > 0.0) || !(V < A)) {
    throw Error(ErrorKind::TargetOutOfRange, "annulus volume must lie in ]0, A[");
  }
  if (grid_size < 128) throw Error(ErrorKind::Domain, "annulus_oracle needs grid_size >= 128");

  CandidateRegion best;
  best.kind = CandidateKind::Annulus;
  best.volume = V;
  best.perimeter = numerics::kInf;
  const double free_volume = A - V;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double inner = free_volume * static_cast<double>(i) / static_cast<double>(grid_size);
    const double t_a = i == 0 ? 0.0 : radius_of_disk_volume(s, inner);
    const double outside = free_volume - inner;  // tail volume beyond t_b
    const double t_b = outside <= 0.5 * A ? radius_of_tail_volume(s, outside)
                                          : radius_of_disk_volume(s, inner + V);
    const double perimeter = (t_a > 0.0 ? sphere_area(s, t_a) : 0.0) + sphere_area(s, t_b);
    if (perimeter < best.perimeter) {
      best.perimeter = perimeter;
      best.boundary_radii = {t_a, t_b};
    }
  }
  return best;
}

}  // namespace isoratio
