#pragma once

/// \file
/// Command implementations behind the `isoratio` executable. Each writes a
/// plain-text report with PASS / FAIL / INFO line prefixes and returns the
/// process exit code:
///   0 success, 1 config or usage error, 2 hypothesis failure, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "isoratio/config.hpp"
#include "isoratio/error.hpp"
#include "isoratio/lemmas.hpp"
#include "isoratio/profile.hpp"
#include "isoratio/ratios.hpp"
#include "isoratio/surface.hpp"

namespace isoratio::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kHypothesis = 2, kIo = 3 };

inline std::string fmt_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", x);
}

inline void put(std::ostream& out, const char* tag, const std::string& text) {
  out << tag << ' ' << text << '\n';
}

inline void put_check(std::ostream& out, bool ok, const std::string& text) { put(out, ok ? "PASS" : "FAIL", text); }

/// Default directory for output files: $ISORATIO_OUT_DIR, else the working directory.
inline std::filesystem::path default_out_dir() {
  if (const char* dir = std::getenv("ISORATIO_OUT_DIR"); dir && *dir) return dir;
  return std::filesystem::current_path();
}

namespace detail {

// Curvature samples: a few before the decay start, the rest beyond it.
inline std::vector<double> curvature_sample_points(const SurfaceOfRevolution& s) {
  const double T0 = std::max(s.warping().decay().start, 1.0);
  std::vector<double> pts;
  for (double frac : {0.25, 0.5, 0.75}) pts.push_back(frac * T0);
  for (int k = 1; k <= 5; ++k) pts.push_back(T0 + 0.5 * k);
  return pts;
}

inline void print_conditions(std::ostream& out, const ConditionsReport& c) {
  put_check(out, c.j_holds, fmt::format("condition (j): single sign change of f' at t1 = {}", fmt_real(c.t1)));
  put_check(out, c.jj_holds, fmt::format("condition (jj): K' <= 0 beyond t = {}", fmt_real(c.jj_threshold)));
  put_check(out, c.jjj_holds, "condition (jjj): finite total volume");
  put_check(out, c.jv_holds, "condition (jv): finite tail volumes");
  put_check(out, c.v_holds, fmt::format("condition (v): witness from t0 = {}", fmt_real(c.v_t0)));
  for (const Witness& w : c.witnesses) {
    put(out, "INFO", fmt::format("witness ({}) t = {} value = {}", w.condition, fmt_real(w.t), fmt_real(w.value)));
  }
}

}  // namespace detail

inline int cmd_describe(const SurfaceConfig& cfg, std::ostream& out) {
  const SurfaceOfRevolution s = cfg.build();
  put(out, "INFO", fmt::format("surface {} family {} n = {}", cfg.name, s.warping().family_name(), s.n()));
  put(out, "INFO", fmt::format("omega_n = {}", fmt_real(s.omega_n())));
  put(out, "INFO", fmt::format("A = {}", fmt_real(s.total_volume())));
  const DecayCertificate& d = s.warping().decay();
  put(out, "INFO", fmt::format("decay M = {} alpha = {} T0 = {}", fmt_real(d.scale), fmt_real(d.rate),
                               fmt_real(d.start)));
  for (double t : detail::curvature_sample_points(s)) {
    put(out, "INFO", fmt::format("K({}) = {}", fmt_real(t), fmt_real(curvature(s, t))));
  }
  const ConditionsReport c = check_conditions(s);
  put(out, "INFO", fmt::format("t1 = {}", fmt_real(c.t1)));
  detail::print_conditions(out, c);
  return c.all_hold() ? kOk : kHypothesis;
}

/// Writes the sweep table for `grid_size` uniform volumes.
inline int cmd_sweep(const SurfaceConfig& cfg, std::size_t grid_size, const std::filesystem::path& out_path,
                     std::ostream& out) {
  if (grid_size < 16) {
    put(out, "FAIL", "grid size must be at least 16");
    return kUsage;
  }
  const SurfaceOfRevolution s = cfg.build();
  const std::vector<SweepRow> rows = sweep_rows(s, uniform_volume_grid(s, grid_size));
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    put(out, "FAIL", fmt::format("cannot write {}", out_path.string()));
    return kIo;
  }
  write_sweep(file, rows);
  file.close();
  if (!file) {
    put(out, "FAIL", fmt::format("write to {} failed", out_path.string()));
    return kIo;
  }
  double min_iflat = numerics::kInf;
  for (const SweepRow& r : rows) min_iflat = std::min(min_iflat, r.iflat);
  put(out, "INFO", fmt::format("wrote {} rows to {}", rows.size(), out_path.string()));
  put(out, "INFO", fmt::format("min iflat on grid = {}", fmt_real(min_iflat)));
  return kOk;
}

inline int cmd_minimize(const SurfaceConfig& cfg, Ratio which, std::ostream& out) {
  const SurfaceOfRevolution s = cfg.build();
  try {
    const MinimizerCertificate c = minimize_ratio(s, which);
    put(out, "PASS", fmt::format("interior minimum of {}", to_string(which)));
    put(out, "INFO", fmt::format("V0 = {}", fmt_real(c.V0)));
    put(out, "INFO", fmt::format("value = {}", fmt_real(c.value)));
    put(out, "INFO", fmt::format("t0 = {}", fmt_real(c.t0)));
    put(out, "INFO", fmt::format("candidate = {}", to_string(c.best.kind)));
    put(out, "INFO", fmt::format("interior margin = {}", fmt_real(c.interior_margin)));
    return kOk;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BoundaryMinimum) throw;
    put(out, "FAIL", e.what());
    return kHypothesis;
  }
}

inline int cmd_verify(const SurfaceConfig& cfg, std::ostream& out) {
  const SurfaceOfRevolution s = cfg.build();
  bool ok = true;
  put(out, "INFO", fmt::format("surface {} A = {}", cfg.name, fmt_real(s.total_volume())));

  const ConditionsReport c = check_conditions(s);
  detail::print_conditions(out, c);
  ok = ok && c.all_hold();

  const HypothesisReport h = check_theorem_ste4(s);
  put(out, "INFO", fmt::format("C1 = {}{}", fmt_real(h.limit_constant), h.limit_stable ? "" : " (unstable)"));
  if (!h.note.empty()) put(out, "INFO", h.note);
  put(out, "INFO", fmt::format("iflat infimum = {}", fmt_real(h.inf_value)));
  put_check(out, h.cond_i_holds, "hypothesis (i): C1 > 0");
  put_check(out, h.cond_ii_holds, "hypothesis (ii): iflat infimum < C1");
  ok = ok && h.cond_i_holds && h.cond_ii_holds;
  if (h.certificate) {
    const MinimizerCertificate& m = *h.certificate;
    put(out, "INFO", fmt::format("minimizer V0 = {} t0 = {} candidate = {} margin = {}", fmt_real(m.V0),
                                 fmt_real(m.t0), to_string(m.best.kind), fmt_real(m.interior_margin)));
    put(out, "INFO", fmt::format("C = {} D = {} iflat = {} isharp = {}", fmt_real(h.constants.C),
                                 fmt_real(h.constants.D), fmt_real(h.constants.iflat), fmt_real(h.constants.isharp)));
    put_check(out, h.equality_chain_holds,
              fmt::format("equality chain at the minimizer (spread {})", fmt_real(h.equality_chain_spread)));
    ok = ok && h.equality_chain_holds;
  } else {
    put(out, "FAIL", "no interior minimizer");
    ok = false;
  }

  // Orderings on a grid reaching toward both ends.
  std::vector<double> grid = uniform_volume_grid(s, 63);
  const double A = s.total_volume();
  for (double e : {1e-3, 1e-4, 1e-5}) {
    grid.insert(grid.begin(), e * A);
    grid.push_back((1.0 - e) * A);
  }
  std::sort(grid.begin(), grid.end());
  try {
    const OrderingReport o = ordering_check(s, grid);
    put(out, "PASS", fmt::format("orderings iflat <= isharp and istar <= istarstar on {} volumes", grid.size()));
    put_check(out, o.min_istar < 1e-2 * o.istar_mid,
              fmt::format("istar vanishes toward the ends (grid min {} vs {} at A/2)", fmt_real(o.min_istar),
                          fmt_real(o.istar_mid)));
    ok = ok && o.min_istar < 1e-2 * o.istar_mid;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OrderingViolated) throw;
    put(out, "FAIL", e.what());
    ok = false;
  }

  if (c.all_hold()) {
    // Two-sphere regions never beat the single sphere.
    const OrderingReport shells = ordering_check(s, uniform_volume_grid(s, 7), 128);
    put_check(out, shells.annulus_dominance, "iflat <= D of the best shell at 7 volumes");
    ok = ok && shells.annulus_dominance;
  }

  const HypothesisReport h5 = check_theorem_ste5(s);
  put(out, "INFO", fmt::format("C2 = {}; istar hypotheses {}", fmt_real(h5.limit_constant),
                               h5.holds() ? "hold" : "do not hold"));
  put(out, ok ? "PASS" : "FAIL", "verification");
  return ok ? kOk : kHypothesis;
}

inline int cmd_lemmas(int p, std::size_t trials, std::uint64_t seed, bool conjecture, std::ostream& out) {
  if (trials == 0) {
    put(out, "FAIL", "trials must be positive");
    return kUsage;
  }
  if (p < 1 || (p > 2 && !conjecture)) {
    put(out, "FAIL", fmt::format("p = {} is outside {{1, 2}}; pass --conjecture to explore it", p));
    return kUsage;
  }
  if (conjecture && p > 2) put(out, "INFO", "conjecture mode: results are beyond the proven cases");
  SearchOptions opts;
  opts.seed = seed;
  opts.conjecture = conjecture;
  const CounterexampleReport r = random_search_counterexample(p, trials, opts);
  put(out, "INFO", fmt::format("p = {} trials = {} seed = {}", p, r.trials, seed));
  put(out, "INFO", fmt::format("min relative margin = {:.6e}", r.min_relative_margin));
  const SplitInstance& a = r.argmin;
  put(out, "INFO", fmt::format("at L1 = {:.6e} L2 = {:.6e} A1 = {:.6e} A2 = {:.6e} A3 = {:.6e}", a.L1, a.L2, a.A1,
                               a.A2, a.A3));
  for (const SplitInstance& w : r.witnesses) {
    put(out, "INFO", fmt::format("violation L1 = {:.6e} L2 = {:.6e} A1 = {:.6e} A2 = {:.6e} A3 = {:.6e}", w.L1,
                                 w.L2, w.A1, w.A2, w.A3));
  }
  put_check(out, r.violations == 0, fmt::format("{} violations", r.violations));
  return r.violations == 0 ? kOk : kHypothesis;
}

}  // namespace isoratio::cli
