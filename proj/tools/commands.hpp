#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "football/football.hpp"
#include "football/report_io.hpp"
#include "json.hpp"

namespace football::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kSolver = 3,
  kVerdictFail = 4,
};

[[nodiscard]] inline int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BracketFailure:
    case ErrorCode::DivergentIntegral:
    case ErrorCode::DisconnectedMesh:
    case ErrorCode::EmbeddingObstruction:
      return kSolver;
    default:
      return kValidation;
  }
}

/// Root tolerance: explicit flag, else FOOTBALL_TOL, else the library default.
[[nodiscard]] inline double resolve_tolerance(std::optional<double> flag) {
  if (flag) {
    require(*flag > 0.0 && std::isfinite(*flag), ErrorCode::DomainError, "--tol must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("FOOTBALL_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    require(end != env && *end == '\0' && v > 0.0 && std::isfinite(v), ErrorCode::DomainError,
            std::string("FOOTBALL_TOL is not a positive number: ") + env);
    return v;
  }
  return kDefaultRootTolerance;
}

/// Runs a command body, mapping library errors onto the exit-code contract.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::DomainError, "cannot open output file " + path);
  return f;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  double beta1 = 0.5;
  double beta2 = 0.5;
  std::optional<double> tol;
};

[[nodiscard]] inline nlohmann::ordered_json solve_json(const SolveOptions& o) {
  const double tol = resolve_tolerance(o.tol);
  const ConeAngles angles(o.beta1, o.beta2);
  const SolitonProfile p = solve_coefficient(angles, tol);
  nlohmann::ordered_json j;
  j["beta1"] = p.beta1();
  j["beta2"] = p.beta2();
  j["swapped"] = angles.swapped();
  j["a"] = p.a();
  j["residual"] = eval_F(p.a(), angles);
  j["a_beta1"] = p.a_beta1();
  j["log_defect"] = p.a() == 0.0 ? 0.0 : std::log1p(p.a_beta2()) - p.a() * p.length();
  j["a_beta2"] = p.a_beta2();
  j["curvature_sup"] = p.curvature_sup();
  j["area"] = area(football_metric(p));
  j["area_expected"] = 2.0 * std::numbers::pi * p.length();
  j["tolerance"] = tol;
  return j;
}

inline int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << solve_json(o).dump(2) << '\n';
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  int n = 20;
  double lo = 0.05;
  double hi = 1.0;
  std::optional<double> tol;
};

/// CSV columns: beta1,beta2,a,a_beta1,a_beta2,curvature_sup. One row per grid pair with beta1 <= beta2.
inline int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(o.n >= 1, ErrorCode::DomainError, "--n must be >= 1");
    require(o.lo > 0.0 && o.hi <= 1.0 && o.lo <= o.hi, ErrorCode::AngleOutOfRange,
            "sweep range must satisfy 0 < lo <= hi <= 1");
    const double tol = resolve_tolerance(o.tol);
    std::vector<double> grid(static_cast<std::size_t>(o.n));
    for (int i = 0; i < o.n; ++i) grid[static_cast<std::size_t>(i)] = o.n == 1 ? o.lo : o.lo + (o.hi - o.lo) * i / (o.n - 1);
    std::ostringstream buf;
    buf << "beta1,beta2,a,a_beta1,a_beta2,curvature_sup\n";
    char line[256];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i; j < grid.size(); ++j) {
        const SolitonProfile p = solve_coefficient(ConeAngles(grid[i], grid[j]), tol);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.beta1(), p.beta2(), p.a(),
                      p.a_beta1(), p.a_beta2(), p.curvature_sup());
        buf << line;
      }
    }
    out << buf.str();
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// limit

struct LimitOptions {
  std::string regime = "cigar";
  double beta = 1.0;
  double c = 0.5;
  double L = 10.0;
  double U = 1.0;
  int k = 2;
  std::optional<int> n_first;
  std::optional<int> n_last;
  int grid = 1001;
  std::string rescaling = "proof";
  std::optional<double> tol;
  std::string json_path;
  std::string csv_path;
  std::string svg_path;
};

[[nodiscard]] inline ConvergenceReport run_limit(const LimitOptions& o) {
  const double tol = resolve_tolerance(o.tol);
  if (o.regime == "cigar") {
    require(o.rescaling == "proof" || o.rescaling == "theorem", ErrorCode::DomainError,
            "--rescaling must be proof or theorem");
    const LimitPath path = cigar_path(o.beta, o.n_first.value_or(1), o.n_last.value_or(6));
    CigarLimitOptions opt;
    opt.grid_points = o.grid;
    opt.rescaling = o.rescaling == "proof" ? CigarRescaling::proof : CigarRescaling::theorem;
    opt.root_tol = tol;
    return run_cigar_limit(path, o.L, o.k, opt);
  }
  if (o.regime == "cylinder") {
    const LimitPath path = cylinder_path(o.c, o.n_first.value_or(3), o.n_last.value_or(16));
    CylinderLimitOptions opt;
    opt.grid_points = o.grid;
    opt.root_tol = tol;
    return run_cylinder_limit(path, o.U, o.k, opt);
  }
  fail(ErrorCode::DomainError, "--regime must be cigar or cylinder");
}

/// Writes the report as JSON (stdout unless --json) plus optional CSV/SVG; exit 4 on a failed verdict.
inline int cmd_limit(const LimitOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ConvergenceReport report = run_limit(o);
    const std::string json = to_json(report).dump(2) + "\n";
    if (o.json_path.empty()) {
      out << json;
    } else {
      open_output(o.json_path) << json;
    }
    if (!o.csv_path.empty()) {
      std::ofstream f = open_output(o.csv_path);
      write_report_csv(f, report);
    }
    if (!o.svg_path.empty()) {
      std::ofstream f = open_output(o.svg_path);
      write_report_svg(f, report);
    }
    if (!report.verdict) {
      err << "verdict: fail\n";
      return static_cast<int>(kVerdictFail);
    }
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// embed

struct EmbedOptions {
  double beta1 = 1.0;
  double beta2 = 1.0;
  int n = 201;
  int n_theta = 64;
  std::optional<double> tol;
  std::string mesh_path;
  std::string csv_path;
};

inline int cmd_embed(const EmbedOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(o.n >= 3, ErrorCode::ResolutionTooLow, "--n must be >= 3");
    const SolitonProfile p = solve_coefficient(ConeAngles(o.beta1, o.beta2), resolve_tolerance(o.tol));
    const EmbeddingProfile e = embedding_profile(p, o.n);
    if (!o.mesh_path.empty()) {
      std::ofstream f = open_output(o.mesh_path);
      write_mesh_text(f, e, o.n_theta);
    }
    if (o.csv_path.empty()) {
      write_profile_csv(out, e);
    } else {
      std::ofstream f = open_output(o.csv_path);
      write_profile_csv(f, e);
      char line[160];
      std::snprintf(line, sizeof line, "height %.17g\n", e.height());
      out << line;
    }
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// profile

struct ProfileOptions {
  double beta1 = 1.0;
  double beta2 = 1.0;
  int n = 101;
  std::optional<double> tol;
};

/// CSV columns: tau,phi,phi_prime,curvature,g_tt,g_thth on a uniform tau grid (poles included).
inline int cmd_profile(const ProfileOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(o.n >= 2, ErrorCode::ResolutionTooLow, "--n must be >= 2");
    const SolitonProfile p = solve_coefficient(ConeAngles(o.beta1, o.beta2), resolve_tolerance(o.tol));
    std::ostringstream buf;
    buf << "tau,phi,phi_prime,curvature,g_tt,g_thth\n";
    char line[256];
    for (int i = 0; i < o.n; ++i) {
      const double t = (i + 1 == o.n) ? p.length() : p.length() * i / (o.n - 1);
      const double f = phi(t, p);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, f, phi_prime(t, p),
                    curvature(t, p), 1.0 / (2.0 * f), 2.0 * f);
      buf << line;
    }
    out << buf.str();
    return static_cast<int>(kOk);
  });
}

// ---------------------------------------------------------------------------
// geometry

struct GeometryOptions {
  double beta1 = 1.0;
  double beta2 = 1.0;
  int n_t = 200;
  int n_theta = 200;
  int samples = 8;
  std::uint64_t seed = 1;
  std::optional<double> tol;
};

/// Area, pole-to-pole distance by quadrature and by mesh, and mesh distances between seeded sample pairs.
[[nodiscard]] inline nlohmann::ordered_json geometry_json(const GeometryOptions& o) {
  require(o.samples >= 0, ErrorCode::DomainError, "--samples must be >= 0");
  const SolitonProfile p = solve_coefficient(ConeAngles(o.beta1, o.beta2), resolve_tolerance(o.tol));
  const RotSymMetric m = football_metric(p);
  const SurfaceMesh mesh = build_mesh(m, o.n_t, o.n_theta);
  nlohmann::ordered_json j;
  j["beta1"] = p.beta1();
  j["beta2"] = p.beta2();
  j["a"] = p.a();
  j["area"] = area(m);
  j["pole_distance"] = meridian_distance(m, 0.0, p.length());
  j["pole_distance_mesh"] = approx_distance(mesh, {0.0, 0.0, Chart::tau}, {p.length(), 0.0, Chart::tau});
  j["mesh"] = {{"n_t", o.n_t}, {"n_theta", o.n_theta}, {"nodes", mesh.node_count()}, {"edges", mesh.edge_count()}};
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> t_dist(0.0, p.length());
  std::uniform_real_distribution<double> th_dist(0.0, 2.0 * std::numbers::pi);
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (int i = 0; i < o.samples; ++i) {
    const ChartPoint a = ChartPoint::make(t_dist(rng), th_dist(rng), Chart::tau);
    const ChartPoint b = ChartPoint::make(t_dist(rng), th_dist(rng), Chart::tau);
    pairs.push_back({{"p", {a.t, a.theta}}, {"q", {b.t, b.theta}}, {"mesh_distance", approx_distance(mesh, a, b)}});
  }
  j["seed"] = o.seed;
  j["samples"] = pairs;
  return j;
}

inline int cmd_geometry(const GeometryOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << geometry_json(o).dump(2) << '\n';
    return static_cast<int>(kOk);
  });
}

}  // namespace football::cli
