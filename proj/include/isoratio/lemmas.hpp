#pragma once

/// \file
/// Split inequalities for positive L1, L2, A1, A2, A3:
///
///   (L1 + L2)^p (1/(A1+A2) + 1/A3)
///       > min{ L1^p (1/A1 + 1/(A2+A3)), L2^p (1/A2 + 1/(A1+A3)) },   p = 1, 2,
///
/// checked in floating point, in exact rationals, by seeded random search,
/// and on pairs of disjoint shells of a surface of revolution.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isoratio/error.hpp"
#include "isoratio/profile.hpp"
#include "isoratio/surface.hpp"

namespace isoratio {

struct SplitInstance {
  double L1 = 1.0;
  double L2 = 1.0;
  double A1 = 1.0;
  double A2 = 1.0;
  double A3 = 1.0;

  void validate() const {
    for (double x : {L1, L2, A1, A2, A3}) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::Domain, "split instance fields must be positive and finite");
      }
    }
  }
};

namespace detail {

inline void check_power(int p, bool conjecture) {
  if (p < 1) throw Error(ErrorKind::Domain, "split power must be >= 1");
  if (!conjecture && p > 2) {
    throw Error(ErrorKind::Domain, "split power " + std::to_string(p) + " needs conjecture mode");
  }
}

template <typename T>
T ipow(T x, int p) {
  T out = 1;
  for (int i = 0; i < p; ++i) out *= x;
  return out;
}

template <typename T>
T lhs_of(T L1, T L2, T A1, T A2, T A3, int p) {
  return ipow<T>(L1 + L2, p) * (T(1) / (A1 + A2) + T(1) / A3);
}

template <typename T>
T rhs_of(T L1, T L2, T A1, T A2, T A3, int p) {
  const T first = ipow<T>(L1, p) * (T(1) / A1 + T(1) / (A2 + A3));
  const T second = ipow<T>(L2, p) * (T(1) / A2 + T(1) / (A1 + A3));
  return first < second ? first : second;
}

}  // namespace detail

inline double split_lhs(const SplitInstance& s, int p, bool conjecture = false) {
  s.validate();
  detail::check_power(p, conjecture);
  return detail::lhs_of(s.L1, s.L2, s.A1, s.A2, s.A3, p);
}

inline double split_rhs(const SplitInstance& s, int p, bool conjecture = false) {
  s.validate();
  detail::check_power(p, conjecture);
  return detail::rhs_of(s.L1, s.L2, s.A1, s.A2, s.A3, p);
}

struct SplitCheck {
  bool holds = false;
  double margin = 0.0;           // lhs - rhs
  double relative_margin = 0.0;  // (lhs - rhs) / lhs
};

/// Evaluated in long double so that margins of order 1e-12 relative survive.
inline SplitCheck check_split(const SplitInstance& s, int p, bool conjecture = false) {
  s.validate();
  detail::check_power(p, conjecture);
  using LD = long double;
  const LD lhs = detail::lhs_of<LD>(s.L1, s.L2, s.A1, s.A2, s.A3, p);
  const LD rhs = detail::rhs_of<LD>(s.L1, s.L2, s.A1, s.A2, s.A3, p);
  SplitCheck out;
  out.holds = lhs > rhs;
  out.margin = static_cast<double>(lhs - rhs);
  out.relative_margin = static_cast<double>((lhs - rhs) / lhs);
  return out;
}

/// Aggregate slack for p = 1: if lhs <= each term of the minimum, summing the
/// two normalized inequalities leaves 0 >= 2 A1 A2 / (A3 (A1 + A2)).
inline double split_slack(const SplitInstance& s) {
  s.validate();
  return 2.0 * s.A1 * s.A2 / (s.A3 * (s.A1 + s.A2));
}

using Rational = boost::multiprecision::cpp_rational;

struct ExactSplit {
  Rational lhs;
  Rational rhs;
  Rational margin;
  bool holds = false;
};

/// Exact evaluation for integer instances.
inline ExactSplit check_split_exact(const std::array<std::int64_t, 5>& inst, int p, bool conjecture = false) {
  detail::check_power(p, conjecture);
  for (std::int64_t v : inst) {
    if (v <= 0) throw Error(ErrorKind::Domain, "split instance fields must be positive");
  }
  const Rational L1(inst[0]), L2(inst[1]), A1(inst[2]), A2(inst[3]), A3(inst[4]);
  ExactSplit out;
  out.lhs = detail::lhs_of<Rational>(L1, L2, A1, A2, A3, p);
  out.rhs = detail::rhs_of<Rational>(L1, L2, A1, A2, A3, p);
  out.margin = out.lhs - out.rhs;
  out.holds = out.lhs > out.rhs;
  return out;
}

struct SearchOptions {
  std::uint64_t seed = 42;
  std::size_t shards = 8;
  double log10_lo = -6.0;
  double log10_hi = 6.0;
  bool conjecture = false;
};

struct CounterexampleReport {
  int p = 1;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_relative_margin = std::numeric_limits<double>::infinity();
  SplitInstance argmin;
  std::vector<SplitInstance> witnesses;  // up to 16 violating instances
};

/// Fields drawn log-uniformly from [10^lo, 10^hi]. Trials are split into
/// shards with seeds derived from (seed, shard); the merge is in shard order,
/// so the report depends only on the seed, the trial count and the shard count.
inline CounterexampleReport random_search_counterexample(int p, std::size_t trials, const SearchOptions& opts = {}) {
  if (trials == 0) throw Error(ErrorKind::Domain, "random search needs at least one trial");
  detail::check_power(p, opts.conjecture);
  const std::size_t shards = std::max<std::size_t>(1, std::min(opts.shards, trials));

  auto run_shard = [&](std::size_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(shard)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> exponent(opts.log10_lo, opts.log10_hi);
    const std::size_t begin = trials * shard / shards;
    const std::size_t end = trials * (shard + 1) / shards;
    CounterexampleReport part;
    part.p = p;
    for (std::size_t i = begin; i < end; ++i) {
      SplitInstance inst;
      for (double* field : {&inst.L1, &inst.L2, &inst.A1, &inst.A2, &inst.A3}) {
        *field = std::pow(10.0, exponent(rng));
      }
      const SplitCheck c = check_split(inst, p, opts.conjecture);
      ++part.trials;
      if (!c.holds) {
        ++part.violations;
        if (part.witnesses.size() < 16) part.witnesses.push_back(inst);
      }
      if (c.relative_margin < part.min_relative_margin) {
        part.min_relative_margin = c.relative_margin;
        part.argmin = inst;
      }
    }
    return part;
  };

  std::vector<std::future<CounterexampleReport>> jobs;
  for (std::size_t k = 0; k < shards; ++k) jobs.push_back(std::async(std::launch::async, run_shard, k));

  CounterexampleReport out;
  out.p = p;
  for (auto& job : jobs) {
    const CounterexampleReport part = job.get();
    out.trials += part.trials;
    out.violations += part.violations;
    for (const SplitInstance& w : part.witnesses) {
      if (out.witnesses.size() < 16) out.witnesses.push_back(w);
    }
    if (part.min_relative_margin < out.min_relative_margin) {
      out.min_relative_margin = part.min_relative_margin;
      out.argmin = part.argmin;
    }
  }
  return out;
}

/// Shell {t_inner < t < t_outer}; t_inner = 0 is a ball.
struct Annulus {
  double t_inner = 0.0;
  double t_outer = 0.0;
};

inline double annulus_volume(const SurfaceOfRevolution& s, const Annulus& a) {
  // Differences of the smaller of the two maps keep precision at both ends.
  if (disk_volume(s, a.t_inner) <= 0.5 * s.total_volume()) {
    return disk_volume(s, a.t_outer) - disk_volume(s, a.t_inner);
  }
  return tail_volume(s, a.t_inner) - tail_volume(s, a.t_outer);
}

inline double annulus_perimeter(const SurfaceOfRevolution& s, const Annulus& a) {
  return (a.t_inner > 0.0 ? sphere_area(s, a.t_inner) : 0.0) + sphere_area(s, a.t_outer);
}

struct DisconnectionPenalty {
  double d_union = 0.0;
  std::array<double, 2> d_parts{};
  SplitInstance instance;  // L = perimeters, A1, A2 = volumes, A3 = complement of the union
  SplitCheck split;

  bool penalized() const { return d_union > std::min(d_parts[0], d_parts[1]); }
};

/// D-ratio of the union of two disjoint shells against the D-ratio of each.
inline DisconnectionPenalty disconnection_penalty(const SurfaceOfRevolution& s, const Annulus& first,
                                                  const Annulus& second) {
  for (const Annulus& a : {first, second}) {
    if (!(a.t_inner >= 0.0) || !(a.t_outer > a.t_inner) || !std::isfinite(a.t_outer)) {
      throw Error(ErrorKind::Domain, "annulus radii must satisfy 0 <= t_inner < t_outer < infinity");
    }
  }
  if (!(first.t_outer <= second.t_inner || second.t_outer <= first.t_inner)) {
    throw Error(ErrorKind::Domain, "annuli overlap");
  }
  const double A = s.total_volume();
  const double v1 = annulus_volume(s, first);
  const double v2 = annulus_volume(s, second);
  const double rest = A - v1 - v2;
  if (!(v1 > 0.0) || !(v2 > 0.0) || !(rest > 0.0)) {
    throw Error(ErrorKind::Domain, "annulus volumes must be positive with a nonempty complement");
  }
  DisconnectionPenalty out;
  out.instance = {annulus_perimeter(s, first), annulus_perimeter(s, second), v1, v2, rest};
  const SplitInstance& in = out.instance;
  out.d_union = split_lhs(in, 1);
  out.d_parts = {in.L1 * (1.0 / v1 + 1.0 / (A - v1)), in.L2 * (1.0 / v2 + 1.0 / (A - v2))};
  out.split = check_split(in, 1);
  return out;
}

/// Two disjoint shells with radii at four sorted uniform volume fractions
/// of A; the innermost radius may be the pole, giving a ball.
template <typename Rng>
std::pair<Annulus, Annulus> random_annulus_pair(const SurfaceOfRevolution& s, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double A = s.total_volume();
  for (;;) {
    std::array<double, 4> u{};
    for (double& x : u) x = unit(rng);
    std::sort(u.begin(), u.end());
    const double gaps[] = {u[1] - u[0], u[3] - u[2], 1.0 - (u[1] - u[0]) - (u[3] - u[2])};
    if (*std::min_element(std::begin(gaps), std::end(gaps)) < 1e-6) continue;
    std::array<double, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
      const double V = u[i] * A;
      if (V <= 0.0) {
        t[i] = 0.0;
      } else {
        t[i] = V <= 0.5 * A ? radius_of_disk_volume(s, V) : radius_of_tail_volume(s, A - V);
      }
    }
    if (!(t[0] < t[1] && t[1] < t[2] && t[2] < t[3])) continue;
    return {Annulus{t[0], t[1]}, Annulus{t[2], t[3]}};
  }
}

}  // namespace isoratio
