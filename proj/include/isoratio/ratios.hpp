#pragma once

/// \file
/// Hamilton-type isoperimetric ratios built on the profile:
///
///   iflat(V) = I(V) (1/V + 1/(A-V)),   istar(V) = I(V)^{n+1} (1/V + 1/(A-V))^n,
///
/// their global minimization over ]0, A[, the hypotheses that guarantee an
/// interior minimizer, and the pointwise orderings between the
/// volume-parametrized curves and the hypersurface functionals.
///
/// Smooth-separating and arbitrary-boundary variants coincide on the candidate
/// family (every geodesic sphere is smooth, closed and separating), so one
/// computation serves both labels: isharp == iflat and istarstar == istar.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoratio/error.hpp"
#include "isoratio/numerics.hpp"
#include "isoratio/profile.hpp"
#include "isoratio/surface.hpp"

namespace isoratio {

/// P^p (1/v1 + 1/v2)^q with q = max(1, p - 1): p = 1 gives C(N) and D(H),
/// p = n + 1 gives I(N) and J(H). Other p are outside the two families.
inline double ratio_of_split(double perimeter, double v1, double v2, double p) {
  if (!(perimeter > 0.0) || !(v1 > 0.0) || !(v2 > 0.0)) {
    throw Error(ErrorKind::Domain, "ratio_of_split needs positive perimeter and volumes");
  }
  if (!(p >= 1.0)) throw Error(ErrorKind::Domain, "ratio_of_split needs p >= 1");
  const double pairing = 1.0 / v1 + 1.0 / v2;
  return std::pow(perimeter, p) * std::pow(pairing, std::max(1.0, p - 1.0));
}

enum class Ratio { Flat, Star };

constexpr std::string_view to_string(Ratio r) { return r == Ratio::Flat ? "iflat" : "istar"; }

inline double perimeter_power(const SurfaceOfRevolution& s, Ratio r) {
  return r == Ratio::Flat ? 1.0 : s.n() + 1.0;
}

inline double iflat(const SurfaceOfRevolution& s, double V) {
  return ratio_of_split(profile(s, V).value, V, s.total_volume() - V, 1.0);
}

inline double istar(const SurfaceOfRevolution& s, double V) {
  return ratio_of_split(profile(s, V).value, V, s.total_volume() - V, s.n() + 1.0);
}

inline double ratio_value(const SurfaceOfRevolution& s, double V, Ratio r) {
  return r == Ratio::Flat ? iflat(s, V) : istar(s, V);
}

struct RatioCurvePoint {
  double V = 0.0;
  double iflat = 0.0;
  double istar = 0.0;
  double isharp_cand = 0.0;
  double istarstar_cand = 0.0;
  ProfilePoint profile;
};

inline RatioCurvePoint ratio_curve_point(const SurfaceOfRevolution& s, double V) {
  RatioCurvePoint out;
  out.V = V;
  out.profile = profile(s, V);
  const double rest = s.total_volume() - V;
  out.iflat = ratio_of_split(out.profile.value, V, rest, 1.0);
  out.istar = ratio_of_split(out.profile.value, V, rest, s.n() + 1.0);
  out.isharp_cand = out.iflat;
  out.istarstar_cand = out.istar;
  return out;
}

struct MinimizerCertificate {
  Ratio ratio = Ratio::Flat;
  double V0 = 0.0;
  double value = 0.0;
  double t0 = 0.0;
  CandidateRegion best;
  double interior_margin = 0.0;  // min(V0, A - V0)
  bool polished = false;         // argmin refined on the stationarity equation
};

enum class SearchHalf { Lower, Upper };

/// Outcome of the volume search before the boundary verdict.
struct RatioSearch {
  numerics::Minimum grid;
  bool at_boundary = false;
  std::optional<MinimizerCertificate> certificate;
};

namespace detail {

inline constexpr double kEndpointExclusion = 1e-6;

// d/dt log of P(t)^p (1/D + 1/T)^q for the sphere of radius t, where
// D = disk volume, T = tail volume and P' / P = n f'/f, D' = P = -T'.
inline double log_ratio_slope(const SurfaceOfRevolution& s, double t, double p, double q) {
  const double f = s.warping()(t);
  const double D = disk_volume(s, t);
  const double T = tail_volume(s, t);
  const double P = sphere_area(s, t);
  return p * s.n() * s.warping().deriv1(t) / f - q * P * (T - D) / (D * T);
}

inline std::optional<double> polish_sphere(const SurfaceOfRevolution& s, double t_guess, double p, double q) {
  auto slope = [&](double t) { return log_ratio_slope(s, t, p, q); };
  double width = 0.02 * std::max(t_guess, 0.05);
  for (int attempt = 0; attempt < 6; ++attempt, width *= 2.0) {
    const double lo = std::max(t_guess - width, 0.5 * t_guess);
    const double hi = t_guess + width;
    const double s_lo = slope(lo);
    const double s_hi = slope(hi);
    if (s_lo < 0.0 && s_hi > 0.0) {
      auto converged = [](double a, double b) {
        return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
      };
      std::uintmax_t iters = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(slope, lo, hi, s_lo, s_hi, converged, iters);
      return 0.5 * (a + b);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Grid (1024 nodes) + golden-section search of the ratio over one half of
/// ]eps A, (1 - eps) A[, eps = 1e-6. When f' is analytic the argmin is then
/// refined on the stationarity equation of the ratio along the sphere radius.
inline RatioSearch search_ratio_minimum(const SurfaceOfRevolution& s, Ratio r,
                                        SearchHalf half = SearchHalf::Lower,
                                        std::size_t grid_points = 1024) {
  const double A = s.total_volume();
  const double eps = detail::kEndpointExclusion;
  const numerics::Interval domain = half == SearchHalf::Lower ? numerics::Interval(eps * A, 0.5 * A)
                                                              : numerics::Interval(0.5 * A, (1.0 - eps) * A);
  auto objective = [&](double V) { return ratio_value(s, V, r); };

  RatioSearch out;
  out.grid = numerics::minimize_1d(objective, domain, grid_points, s.tolerances().minimize);

  // Boundary verdict: best node within two cells of the excluded end and the
  // values still falling toward it.
  const std::size_t n = out.grid.grid_points;
  const double h = domain.width() / static_cast<double>(n - 1);
  auto node = [&](std::size_t i) { return domain.lo() + h * static_cast<double>(i); };
  if (half == SearchHalf::Lower && out.grid.grid_index <= 2) {
    out.at_boundary = objective(node(0)) <= objective(node(1)) && objective(node(1)) <= objective(node(2));
  } else if (half == SearchHalf::Upper && out.grid.grid_index + 3 >= n) {
    out.at_boundary = objective(domain.hi()) <= objective(node(n - 2)) &&
                      objective(node(n - 2)) <= objective(node(n - 3));
  }
  if (out.at_boundary) return out;

  const double p = perimeter_power(s, r);
  const double q = r == Ratio::Flat ? 1.0 : static_cast<double>(s.n());
  const ProfilePoint at_min = profile(s, out.grid.argmin);

  MinimizerCertificate cert;
  cert.ratio = r;
  cert.V0 = out.grid.argmin;
  cert.value = out.grid.value;
  cert.t0 = at_min.best.radius();
  cert.best = at_min.best;

  if (s.warping().analytic_derivatives()) {
    if (const auto t_star = detail::polish_sphere(s, cert.t0, p, q)) {
      const double D = disk_volume(s, *t_star);
      const double T = tail_volume(s, *t_star);
      const bool disk = at_min.best.kind == CandidateKind::Disk;
      const double V0 = disk ? D : T;
      const double rest = disk ? T : D;
      const double value = ratio_of_split(sphere_area(s, *t_star), V0, rest, p);
      const bool same_side = half == SearchHalf::Lower ? V0 <= 0.5 * A : V0 >= 0.5 * A;
      if (same_side && value <= cert.value * (1.0 + 1e-12)) {
        cert.V0 = V0;
        cert.value = value;
        cert.t0 = *t_star;
        cert.best = {at_min.best.kind, V0, sphere_area(s, *t_star), {*t_star}};
        cert.polished = true;
      }
    }
  }
  cert.interior_margin = std::min(cert.V0, A - cert.V0);
  out.certificate = cert;
  return out;
}

/// Global minimizer of iflat (or istar); throws BoundaryMinimum when the
/// infimum is only approached at the excluded end of the volume range.
inline MinimizerCertificate minimize_ratio(const SurfaceOfRevolution& s, Ratio r,
                                           SearchHalf half = SearchHalf::Lower) {
  RatioSearch search = search_ratio_minimum(s, r, half);
  if (search.at_boundary || !search.certificate) {
    throw Error(ErrorKind::BoundaryMinimum,
                std::string(to_string(r)) + " keeps decreasing toward the end of the volume range (value " +
                    std::to_string(search.grid.value) + " at V = " + std::to_string(search.grid.argmin) + ")");
  }
  return *search.certificate;
}

inline MinimizerCertificate minimize_iflat(const SurfaceOfRevolution& s, SearchHalf half = SearchHalf::Lower) {
  return minimize_ratio(s, Ratio::Flat, half);
}

inline MinimizerCertificate minimize_istar(const SurfaceOfRevolution& s, SearchHalf half = SearchHalf::Lower) {
  return minimize_ratio(s, Ratio::Star, half);
}

/// Candidate-level values of the constants at the minimizer.
struct ConstantValues {
  double C = 0.0;       // C(boundary sphere), separating-hypersurface ratio
  double D = 0.0;       // D(boundary sphere), region-boundary ratio
  double iflat = 0.0;   // infimum of iflat over V
  double isharp = 0.0;  // infimum of the smooth-separating variant
};

struct HypothesisReport {
  Ratio ratio = Ratio::Flat;
  double limit_constant = 0.0;  // C1 for iflat, C2 for istar; may be +infinity
  bool limit_stable = false;
  bool cond_i_holds = false;
  double inf_value = 0.0;
  bool cond_ii_holds = false;
  bool boundary_minimum = false;
  std::optional<MinimizerCertificate> certificate;
  ConstantValues constants;
  bool equality_chain_holds = false;
  double equality_chain_spread = 0.0;  // max relative deviation among the chain
  std::string note;

  bool holds() const { return cond_i_holds && cond_ii_holds && certificate.has_value(); }
};

namespace detail {

inline void fill_chain(const SurfaceOfRevolution& s, HypothesisReport& rep, double p) {
  const MinimizerCertificate& cert = *rep.certificate;
  const double A = s.total_volume();
  const double P = sphere_area(s, cert.t0);
  const double inside = cert.best.kind == CandidateKind::Disk ? cert.V0 : A - cert.V0;
  // C pairs the two sides of the separating sphere; D pairs the region with its complement.
  rep.constants.C = ratio_of_split(P, inside, A - inside, p);
  rep.constants.D = ratio_of_split(cert.best.perimeter, cert.V0, A - cert.V0, p);
  rep.constants.iflat = cert.value;
  rep.constants.isharp = cert.value;
  const double vals[] = {rep.constants.C, rep.constants.D, rep.constants.iflat, rep.constants.isharp};
  const auto [mn, mx] = std::minmax_element(std::begin(vals), std::end(vals));
  rep.equality_chain_spread = (*mx - *mn) / std::abs(*mn);
  rep.equality_chain_holds = rep.equality_chain_spread <= 1e-9;
}

}  // namespace detail

/// Hypotheses for an interior iflat minimizer: (i) C1 = liminf I(V)/V > 0 and
/// (ii) inf iflat < C1. On success the certificate and the chain
/// isharp = iflat = C(boundary) = D(boundary) are filled in.
inline HypothesisReport check_theorem_ste4(const SurfaceOfRevolution& s) {
  HypothesisReport rep;
  rep.ratio = Ratio::Flat;
  try {
    const LiminfEstimate c1 = liminf_small_volume_ratio(s);
    rep.limit_constant = c1.value;
    rep.limit_stable = c1.stable;
    rep.cond_i_holds = c1.value > 0.0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unstable) throw;
    rep.note = e.what();
    rep.cond_i_holds = false;
  }

  const RatioSearch search = search_ratio_minimum(s, Ratio::Flat);
  rep.boundary_minimum = search.at_boundary;
  rep.inf_value = search.certificate ? search.certificate->value : search.grid.value;
  rep.cond_ii_holds = !search.at_boundary && rep.cond_i_holds && rep.inf_value < rep.limit_constant;
  if (search.certificate && !search.at_boundary) {
    rep.certificate = search.certificate;
    detail::fill_chain(s, rep, 1.0);
  }
  return rep;
}

/// Same pipeline for istar with C2 = liminf I(V)^{n+1} / V^n. For n = 1 the
/// minimizing sphere separates M, so I(boundary) equals the istar infimum.
inline HypothesisReport check_theorem_ste5(const SurfaceOfRevolution& s) {
  HypothesisReport rep;
  rep.ratio = Ratio::Star;
  const double n = s.n();
  const SmallVolumeSamples samples = small_volume_samples(s, n + 1.0, n);
  if (samples.values.size() < 8) {
    throw Error(ErrorKind::Unstable, "warping function underflows before 8 samples");
  }
  const numerics::LimitEstimate est = numerics::extrapolate_limit(samples.values);
  const double peak = *std::max_element(samples.values.begin(), samples.values.end());
  // A sequence decaying to 0 is reported as C2 = 0.
  rep.limit_constant = est.value <= 1e-6 * peak ? 0.0 : est.value;
  rep.limit_stable = est.stable || rep.limit_constant == 0.0;
  rep.cond_i_holds = rep.limit_constant > 0.0;
  if (!rep.cond_i_holds) rep.note = "liminf I(V)^{n+1}/V^n vanishes";

  const RatioSearch search = search_ratio_minimum(s, Ratio::Star);
  rep.boundary_minimum = search.at_boundary;
  rep.inf_value = search.certificate ? search.certificate->value : search.grid.value;
  rep.cond_ii_holds = !search.at_boundary && rep.cond_i_holds && rep.inf_value < rep.limit_constant;
  if (search.certificate && !search.at_boundary) {
    rep.certificate = search.certificate;
    detail::fill_chain(s, rep, n + 1.0);
  }
  return rep;
}

struct OrderingRow {
  RatioCurvePoint point;
  double flat_slack = 0.0;  // isharp_cand - iflat, >= 0
  double star_slack = 0.0;  // istarstar_cand - istar, >= 0
  std::optional<double> annulus_d;  // D of the best shell of the same volume
};

struct OrderingReport {
  std::vector<OrderingRow> rows;
  double min_istar = numerics::kInf;
  double min_istar_V = 0.0;
  double istar_mid = 0.0;  // istar at the grid point nearest A/2
  double min_iflat = numerics::kInf;
  bool annulus_dominance = true;  // iflat(V) <= D(shell) for every checked shell
};

/// Checks iflat <= isharp, istar <= istarstar at every grid volume, records
/// the istar infimum over the grid, and optionally compares iflat with the
/// best two-sphere region of equal volume (iflat <= D <= C).
inline OrderingReport ordering_check(const SurfaceOfRevolution& s, const std::vector<double>& grid,
                                     std::size_t annulus_grid = 0) {
  const double A = s.total_volume();
  OrderingReport rep;
  double mid_gap = numerics::kInf;
  for (double V : grid) {
    OrderingRow row;
    row.point = ratio_curve_point(s, V);
    row.flat_slack = row.point.isharp_cand - row.point.iflat;
    row.star_slack = row.point.istarstar_cand - row.point.istar;
    if (row.flat_slack < 0.0 || row.star_slack < 0.0) {
      throw Error(ErrorKind::OrderingViolated, "candidate ordering fails at V = " + std::to_string(V));
    }
    if (annulus_grid > 0) {
      const CandidateRegion shell = annulus_oracle(s, V, annulus_grid);
      row.annulus_d = ratio_of_split(shell.perimeter, V, A - V, 1.0);
      if (*row.annulus_d < row.point.iflat * (1.0 - 1e-9)) rep.annulus_dominance = false;
    }
    if (row.point.istar < rep.min_istar) {
      rep.min_istar = row.point.istar;
      rep.min_istar_V = V;
    }
    rep.min_iflat = std::min(rep.min_iflat, row.point.iflat);
    if (std::abs(V - 0.5 * A) < mid_gap) {
      mid_gap = std::abs(V - 0.5 * A);
      rep.istar_mid = row.point.istar;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace isoratio
