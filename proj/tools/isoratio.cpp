// isoratio: profiles, ratio sweeps, minimizers and checks for surfaces of revolution.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isoratio/commands.hpp"

namespace {

using isoratio::Error;
using isoratio::ErrorKind;
namespace cli = isoratio::cli;

struct Overrides {
  double tol_quadrature = 0.0;
  double tol_minimize = 0.0;
};

isoratio::SurfaceConfig load(const std::string& path, const Overrides& o) {
  isoratio::SurfaceConfig cfg = isoratio::load_config(path);
  if (o.tol_quadrature > 0.0) cfg.tolerances.quadrature = o.tol_quadrature;
  if (o.tol_minimize > 0.0) cfg.tolerances.minimize = o.tol_minimize;
  return cfg;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config:
    case ErrorKind::Domain: return cli::kUsage;
    case ErrorKind::Io: return cli::kIo;
    case ErrorKind::InvalidSurface: return cli::kUsage;
    default: return cli::kHypothesis;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric profiles and ratios on rotationally symmetric manifolds"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path;
  std::size_t grid = 512;
  std::string out_path;
  std::string which = "iflat";
  int power = 1;
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
  bool conjecture = false;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "surface configuration (INI)")->required();
    sub->add_option("--tol-quadrature", overrides.tol_quadrature, "relative quadrature tolerance");
    sub->add_option("--tol-minimize", overrides.tol_minimize, "minimization tolerance");
  };

  CLI::App* describe = app.add_subcommand("describe", "volume, curvature samples and structural conditions");
  add_config(describe);

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate profile, iflat and istar on a volume grid");
  add_config(sweep);
  sweep->add_option("--grid", grid, "number of grid volumes (>= 16)");
  sweep->add_option("--out", out_path, "output CSV (default: $ISORATIO_OUT_DIR/<name>_sweep.csv)");

  CLI::App* minimize = app.add_subcommand("minimize", "global minimizer of iflat or istar");
  add_config(minimize);
  minimize->add_option("--ratio", which, "iflat or istar")->check(CLI::IsMember({"iflat", "istar"}));

  CLI::App* verify = app.add_subcommand("verify", "full hypothesis and ordering report");
  add_config(verify);

  CLI::App* lemmas = app.add_subcommand("lemmas", "random search for split-inequality counterexamples");
  lemmas->add_option("-p,--power", power, "perimeter power (1 or 2)");
  lemmas->add_option("--trials", trials, "number of random instances");
  lemmas->add_option("--seed", seed, "master seed");
  lemmas->add_flag("--conjecture", conjecture, "allow powers beyond 2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  try {
    if (*lemmas) return cli::cmd_lemmas(power, trials, seed, conjecture, std::cout);
    const isoratio::SurfaceConfig cfg = load(config_path, overrides);
    if (*describe) return cli::cmd_describe(cfg, std::cout);
    if (*minimize) {
      return cli::cmd_minimize(cfg, which == "istar" ? isoratio::Ratio::Star : isoratio::Ratio::Flat, std::cout);
    }
    if (*verify) return cli::cmd_verify(cfg, std::cout);
    if (*sweep) {
      const std::filesystem::path target =
          out_path.empty() ? cli::default_out_dir() / (cfg.name + "_sweep.csv") : std::filesystem::path(out_path);
      return cli::cmd_sweep(cfg, grid, target, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kIo;
  }
  return cli::kUsage;
}
