#pragma once

/// \file
/// INI surface configurations and the sweep table format.
///
///   [surface]
///   name   = exp-cusp          ; free text, defaults to the family tag
///   family = exp_cusp          ; exp_cusp | gaussian_cusp | power_cusp | tabulated
///   n      = 1                 ; hypersurface dimension
///   t1     = 8                 ; exp_cusp only
///   a      = 2                 ; power_cusp only
///   tail_rate = 1              ; tabulated only
///
///   [decay]                    ; required: f(t) <= M exp(-alpha t) for t >= T0
///   M = 1
///   alpha = 1
///   T0 = 8
///
///   [tolerances]               ; optional
///   quadrature = 1e-12
///   root = 1e-10
///   minimize = 1e-8
///
///   [knots]                    ; tabulated only, comma-separated lists
///   t = 0, 0.5, 1, 2
///   f = 0, 0.45, 0.6, 0.3

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "isoratio/error.hpp"
#include "isoratio/profile.hpp"
#include "isoratio/ratios.hpp"
#include "isoratio/surface.hpp"
#include "isoratio/warping.hpp"

namespace isoratio {

struct SurfaceConfig {
  std::string name;
  int n = 1;
  WarpingFunction warping = WarpingFunction::gaussian_cusp();
  Tolerances tolerances;

  SurfaceOfRevolution build() const { return SurfaceOfRevolution(warping, n, tolerances); }
};

namespace detail {

inline double parse_real(const std::string& text, const std::string& field) {
  const std::string trimmed = boost::algorithm::trim_copy(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(trimmed.c_str(), &end);
  if (trimmed.empty() || end != trimmed.c_str() + trimmed.size() || errno == ERANGE) {
    throw Error(ErrorKind::Config, fmt::format("field {} is not a number: '{}'", field, text));
  }
  return v;
}

inline double required_real(const boost::property_tree::ptree& pt, const std::string& field) {
  const auto v = pt.get_optional<std::string>(field);
  if (!v) throw Error(ErrorKind::Config, fmt::format("missing field {}", field));
  return parse_real(*v, field);
}

inline double optional_real(const boost::property_tree::ptree& pt, const std::string& field, double fallback) {
  const auto v = pt.get_optional<std::string>(field);
  return v ? parse_real(*v, field) : fallback;
}

inline std::vector<double> parse_list(const boost::property_tree::ptree& pt, const std::string& field) {
  const auto v = pt.get_optional<std::string>(field);
  if (!v) throw Error(ErrorKind::Config, fmt::format("missing field {}", field));
  std::vector<std::string> parts;
  boost::algorithm::split(parts, *v, boost::algorithm::is_any_of(", \t"), boost::algorithm::token_compress_on);
  std::vector<double> out;
  for (const std::string& part : parts) {
    if (!part.empty()) out.push_back(parse_real(part, field));
  }
  return out;
}

}  // namespace detail

/// Parses INI text. Errors carry the line number (syntax) or the dotted field
/// name (content) and are of kind Config.
inline SurfaceConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, fmt::format("line {}: {}", e.line(), e.message()));
  }

  SurfaceConfig cfg;
  const auto family = tree.get_optional<std::string>("surface.family");
  if (!family) throw Error(ErrorKind::Config, "missing field surface.family");
  cfg.name = tree.get<std::string>("surface.name", *family);
  const double n = detail::optional_real(tree, "surface.n", 1.0);
  if (n != std::floor(n) || n < 1.0 || n > 64.0) {
    throw Error(ErrorKind::Config, "field surface.n must be an integer in [1, 64]");
  }
  cfg.n = static_cast<int>(n);

  const DecayCertificate decay{detail::required_real(tree, "decay.M"), detail::required_real(tree, "decay.alpha"),
                               detail::required_real(tree, "decay.T0")};
  if (!(decay.scale > 0.0)) throw Error(ErrorKind::Config, "field decay.M must be positive");
  if (!(decay.rate > 0.0)) throw Error(ErrorKind::Config, "field decay.alpha must be positive");

  cfg.tolerances.quadrature = detail::optional_real(tree, "tolerances.quadrature", cfg.tolerances.quadrature);
  cfg.tolerances.root = detail::optional_real(tree, "tolerances.root", cfg.tolerances.root);
  cfg.tolerances.minimize = detail::optional_real(tree, "tolerances.minimize", cfg.tolerances.minimize);
  for (double t : {cfg.tolerances.quadrature, cfg.tolerances.root, cfg.tolerances.minimize}) {
    if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::Config, "tolerances must lie in ]0, 1[");
  }

  try {
    if (*family == "exp_cusp") {
      cfg.warping = WarpingFunction(ExpCusp(detail::optional_real(tree, "surface.t1", 8.0)), decay);
    } else if (*family == "gaussian_cusp") {
      cfg.warping = WarpingFunction(GaussianCusp{}, decay);
    } else if (*family == "power_cusp") {
      cfg.warping = WarpingFunction(PowerCusp(detail::required_real(tree, "surface.a")), decay);
    } else if (*family == "tabulated") {
      const std::vector<double> ts = detail::parse_list(tree, "knots.t");
      const std::vector<double> fs = detail::parse_list(tree, "knots.f");
      if (ts.size() != fs.size()) {
        throw Error(ErrorKind::Config, "fields knots.t and knots.f differ in length");
      }
      std::vector<Knot> knots;
      for (std::size_t i = 0; i < ts.size(); ++i) knots.push_back({ts[i], fs[i]});
      cfg.warping = WarpingFunction(Tabulated(std::move(knots), detail::optional_real(tree, "surface.tail_rate", 1.0)),
                                    decay);
    } else {
      throw Error(ErrorKind::Config, fmt::format("field surface.family: unknown family '{}'", *family));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, e.what());
  }
  return cfg;
}

inline SurfaceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, fmt::format("cannot open config '{}'", path));
  return parse_config(in);
}

struct SweepRow {
  double V = 0.0;
  double profile = 0.0;
  double iflat = 0.0;
  double istar = 0.0;
  std::string candidate_kind;
  double t = 0.0;
};

inline constexpr const char* kSweepHeader = "V,profile,iflat,istar,candidate_kind,t";

/// V_i = A (i + 1) / (N + 1), i = 0..N-1.
inline std::vector<double> uniform_volume_grid(const SurfaceOfRevolution& s, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points);
  const double A = s.total_volume();
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(A * static_cast<double>(i + 1) / static_cast<double>(points + 1));
  }
  return grid;
}

inline std::vector<SweepRow> sweep_rows(const SurfaceOfRevolution& s, const std::vector<double>& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const ProfilePoint& p : profile_sweep(s, grid)) {
    const double rest = s.total_volume() - p.V;
    rows.push_back({p.V, p.value, ratio_of_split(p.value, p.V, rest, 1.0),
                    ratio_of_split(p.value, p.V, rest, s.n() + 1.0), std::string(to_string(p.best.kind)),
                    p.best.radius()});
  }
  return rows;
}

inline void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << fmt::format("{:.17e},{:.17e},{:.17e},{:.17e},{},{:.17e}\n", r.V, r.profile, r.iflat, r.istar,
                       r.candidate_kind, r.t);
  }
}

inline std::vector<SweepRow> read_sweep(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || boost::algorithm::trim_copy(line) != kSweepHeader) {
    throw Error(ErrorKind::Io, "sweep table header mismatch");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    boost::algorithm::split(cells, line, boost::algorithm::is_any_of(","));
    if (cells.size() != 6) throw Error(ErrorKind::Io, fmt::format("line {}: expected 6 columns", line_no));
    auto num = [&](std::size_t i) {
      try {
        return detail::parse_real(cells[i], fmt::format("line {} column {}", line_no, i + 1));
      } catch (const Error& e) {
        throw Error(ErrorKind::Io, e.what());
      }
    };
    rows.push_back({num(0), num(1), num(2), num(3), cells[4], num(5)});
  }
  return rows;
}

}  // namespace isoratio
