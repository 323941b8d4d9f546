#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "football/error.hpp"
#include "football/metric.hpp"
#include "football/soliton.hpp"
#include "football/special.hpp"

namespace football {

enum class Regime { cigar, cylinder };

[[nodiscard]] constexpr std::string_view to_string(Regime r) noexcept {
  return r == Regime::cigar ? "cigar" : "cylinder";
}

/**
 * A finite sequence of cone angles approaching one of the degeneration
 * regimes:
 *  - cigar(beta):   beta1/beta2 -> 0 with beta2 -> beta
 *  - cylinder(c):   beta1/beta2 = c with beta2 -> 0
 * `drivers` holds the parameter the convergence rate is measured against
 * (beta1/beta2 for cigar, beta2 for cylinder).
 */
struct LimitPath {
  Regime regime = Regime::cigar;
  double parameter = 1.0;
  std::vector<ConeAngles> steps;
  std::vector<double> drivers;
};

/**
 * Cigar path with ratio_n = 10^{-n}, n in [n_first, n_last]. For beta > 0
 * the steps are (beta * ratio_n, beta). beta = 0 needs beta2 -> 0 as well;
 * there beta2 = 10^{-n/2}.
 */
[[nodiscard]] inline LimitPath cigar_path(double beta, int n_first = 1, int n_last = 6) {
  require(beta >= 0.0 && beta <= 1.0, ErrorCode::AngleOutOfRange, "cigar target angle must lie in [0, 1]");
  require(n_first >= 1 && n_last >= n_first, ErrorCode::InvalidPath, "cigar path needs 1 <= n_first <= n_last");
  LimitPath path;
  path.regime = Regime::cigar;
  path.parameter = beta;
  for (int n = n_first; n <= n_last; ++n) {
    const double ratio = std::pow(10.0, -n);
    const double b2 = (beta > 0.0) ? beta : std::pow(10.0, -0.5 * n);
    path.steps.emplace_back(b2 * ratio, b2);
    path.drivers.push_back(path.steps.back().ratio());
  }
  return path;
}

/// Cylinder path beta2 = 2^{-n}, beta1 = c beta2, n in [n_first, n_last].
[[nodiscard]] inline LimitPath cylinder_path(double c, int n_first = 3, int n_last = 16) {
  require(c > 0.0 && c < 1.0, ErrorCode::RatioOutOfRange, "cylinder ratio c must lie in (0, 1)");
  require(n_first >= 0 && n_last >= n_first, ErrorCode::InvalidPath, "cylinder path needs 0 <= n_first <= n_last");
  LimitPath path;
  path.regime = Regime::cylinder;
  path.parameter = c;
  for (int n = n_first; n <= n_last; ++n) {
    const double b2 = std::ldexp(1.0, -n);
    path.steps.emplace_back(c * b2, b2);
    path.drivers.push_back(b2);
  }
  return path;
}

// ---------------------------------------------------------------------------
// Cigar regime

/**
 * (a/beta2) phi at tau = beta1 + beta2 - u/a, in the stable form
 * [(1 + a beta2)(1 - e^{-u}) - u] / (a beta2) = T(u) - (u - T(u)) / (a beta2),
 * T(u) = 1 - e^{-u}. Valid for u in [0, a(beta1 + beta2)].
 */
[[nodiscard]] inline double rescaled_cigar_profile(double u, const SolitonProfile& p) {
  require(p.a() > 0.0, ErrorCode::DomainError, "rescaled profile needs a > 0");
  require(u >= 0.0 && u <= p.a() * p.length(), ErrorCode::DomainError, "u outside [0, a(beta1+beta2)]");
  const double target = -std::expm1(-u);
  return target - u * u * special::exprel2(-u) / p.a_beta2();
}

/// d^order/du^order of rescaled_cigar_profile.
[[nodiscard]] inline double rescaled_cigar_profile_derivative(double u, const SolitonProfile& p, int order) {
  require(order >= 0, ErrorCode::DomainError, "derivative order must be >= 0");
  if (order == 0) return rescaled_cigar_profile(u, p);
  require(u >= 0.0 && u <= p.a() * p.length(), ErrorCode::DomainError, "u outside [0, a(beta1+beta2)]");
  const double ab2 = p.a_beta2();
  const double kappa = (1.0 + ab2) / ab2;
  const double e = std::exp(-u);
  if (order == 1) return kappa * e - 1.0 / ab2;
  return ((order % 2 == 0) ? -kappa : kappa) * e;
}

/// Derivatives of the limit profile (e^u - 1)/e^u.
[[nodiscard]] inline double cigar_limit_profile(double u, int order = 0) {
  if (order == 0) return -std::expm1(-u);
  const double e = std::exp(-u);
  return (order % 2 == 1) ? e : -e;
}

struct MetricCoefficients {
  double g_tt = 0.0;
  double g_thth = 0.0;
};

/// Limit coefficients e^u/(4(e^u - 1)) du^2 + beta^2 (e^u - 1)/e^u dtheta^2.
[[nodiscard]] inline MetricCoefficients cigar_limit_target(double u, double beta) {
  require(u > 0.0, ErrorCode::DomainError, "cigar limit target needs u > 0");
  require(beta >= 0.0 && beta <= 1.0, ErrorCode::AngleOutOfRange, "cigar angle fraction must lie in [0, 1]");
  const double t = -std::expm1(-u);
  return {0.25 / t, beta * beta * t};
}

// ---------------------------------------------------------------------------
// Cylinder regime

struct CylinderConstants {
  double c = 0.0;
  double b = 0.0;       // lim a beta2, root of F_{c,1}
  double B = 0.0;       // 1 - (1 + b) e^{-b} = lim a^2 phi
  double C_of_c = 0.0;  // 2B / (c b)^2, the cylinder scale after rescaling by 1/beta1^2
};

[[nodiscard]] inline CylinderConstants cylinder_constants(double c, double tol = kDefaultRootTolerance) {
  require(c > 0.0 && c < 1.0, ErrorCode::RatioOutOfRange, "cylinder ratio c must lie in (0, 1)");
  CylinderConstants k;
  k.c = c;
  k.b = solve_coefficient(ConeAngles(c, 1.0), tol).a();
  k.B = special::one_minus_one_plus_x_exp_minus_x(k.b);
  k.C_of_c = 2.0 * k.B / ((c * k.b) * (c * k.b));
  return k;
}

/**
 * a^2 phi at tau = beta1 - u/a^2, as 1 - u/a - (1 + a beta2) e^{-(a beta2 + u/a)}.
 * Valid for u in [-a^2 beta2, a^2 beta1].
 */
[[nodiscard]] inline double rescaled_cylinder_profile(double u, const SolitonProfile& p) {
  require(p.a() > 0.0, ErrorCode::DomainError, "rescaled profile needs a > 0");
  const double a = p.a();
  require(u >= -a * a * p.beta2() && u <= a * a * p.beta1(), ErrorCode::DomainError,
          "u outside [-a^2 beta2, a^2 beta1]");
  const double ab2 = p.a_beta2();
  return 1.0 - u / a - (1.0 + ab2) * std::exp(-(ab2 + u / a));
}

[[nodiscard]] inline double rescaled_cylinder_profile_derivative(double u, const SolitonProfile& p, int order) {
  require(order >= 0, ErrorCode::DomainError, "derivative order must be >= 0");
  if (order == 0) return rescaled_cylinder_profile(u, p);
  const double a = p.a();
  require(a > 0.0 && u >= -a * a * p.beta2() && u <= a * a * p.beta1(), ErrorCode::DomainError,
          "u outside [-a^2 beta2, a^2 beta1]");
  const double ab2 = p.a_beta2();
  const double e = (1.0 + ab2) * std::exp(-(ab2 + u / a)) / std::pow(a, order);
  if (order == 1) return -1.0 / a + e;
  return (order % 2 == 0) ? -e : e;
}

// ---------------------------------------------------------------------------
// Convergence reports

struct StepRecord {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double a = 0.0;
  double driver = 0.0;
  std::vector<double> errors;  // sup-norm deviation of the order-j derivative, j = 0..k
  double error_norm = 0.0;     // C^k norm: max over errors
  std::map<std::string, double> diagnostics;
};

struct ConvergenceReport {
  Regime regime = Regime::cigar;
  std::string parameter_name;
  double parameter = 0.0;
  std::string window_kind;
  double window = 0.0;
  int k = 0;
  int grid_points = 0;
  std::string driver_name;
  std::string rescaling;
  std::vector<StepRecord> steps;
  std::optional<double> fitted_rate;
  std::vector<std::optional<double>> order_rates;
  std::optional<std::pair<double, double>> rate_band;
  std::optional<double> tolerance;
  std::map<std::string, double> constants;
  bool verdict = false;
  std::vector<std::string> notes;
};

/// Least-squares slope of log(y) against log(x) over the last `last_n` points.
[[nodiscard]] inline std::optional<double> fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                                                            std::size_t last_n = 4) {
  const std::size_t n = std::min({x.size(), y.size(), last_n});
  if (n < 2) return std::nullopt;
  const std::size_t first = x.size() - n;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (dn * sxy - sx * sy) / denom;
}

enum class CigarRescaling {
  proof,    // a g / 2, then times beta2
  theorem,  // beta2 / (2 beta1) g
};

struct CigarLimitOptions {
  int grid_points = 1001;
  CigarRescaling rescaling = CigarRescaling::proof;
  double rate_lo = 0.9;
  double rate_hi = 1.1;
  double root_tol = kDefaultRootTolerance;
};

struct CylinderLimitOptions {
  int grid_points = 1001;
  double tolerance = 1e-3;
  double curvature_tolerance = 1e-4;
  double root_tol = kDefaultRootTolerance;
};

namespace detail {

inline bool strictly_decreasing(const std::vector<StepRecord>& steps) {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i].error_norm < steps[i - 1].error_norm)) return false;
  }
  return true;
}

inline void fit_rates(ConvergenceReport& report) {
  std::vector<double> drivers;
  std::vector<double> norms;
  for (const auto& s : report.steps) {
    drivers.push_back(s.driver);
    norms.push_back(s.error_norm);
  }
  report.fitted_rate = fit_loglog_slope(drivers, norms);
  report.order_rates.clear();
  for (int j = 0; j <= report.k; ++j) {
    std::vector<double> errs;
    for (const auto& s : report.steps) errs.push_back(s.errors[static_cast<std::size_t>(j)]);
    report.order_rates.push_back(fit_loglog_slope(drivers, errs));
  }
  if (!report.fitted_rate) report.notes.emplace_back("fewer than two steps: no convergence rate");
}

/// Derivatives of 1/q from those of q: q r = 1 gives r^(j) = -(1/q) sum_{i=1..j} C(j,i) q^(i) r^(j-i).
inline std::vector<double> reciprocal_derivatives(const std::vector<double>& q) {
  std::vector<double> r(q.size());
  r[0] = 1.0 / q[0];
  for (std::size_t j = 1; j < q.size(); ++j) {
    double acc = 0.0;
    double binom = 1.0;
    for (std::size_t i = 1; i <= j; ++i) {
      binom = binom * static_cast<double>(j - i + 1) / static_cast<double>(i);
      acc += binom * q[i] * r[j - i];
    }
    r[j] = -acc / q[0];
  }
  return r;
}

}  // namespace detail

/**
 * Cigar limit on the window u in [0, L]: per step, the sup deviation of each
 * u-derivative (order 0..k) of (a/beta2) phi from (e^u - 1)/e^u, plus
 * metric-level diagnostics for the chosen rescaling. Passes when the C^k
 * error decreases strictly along the path and its log-log rate against
 * beta1/beta2 lies in the rate band.
 */
[[nodiscard]] inline ConvergenceReport run_cigar_limit(const LimitPath& path, double L, int k,
                                                       const CigarLimitOptions& opt = {}) {
  require(path.regime == Regime::cigar, ErrorCode::InvalidPath, "run_cigar_limit needs a cigar path");
  require(!path.steps.empty(), ErrorCode::InvalidPath, "empty limit path");
  require(L > 0.0 && std::isfinite(L), ErrorCode::DomainError, "window L must be positive");
  require(k >= 0, ErrorCode::DomainError, "derivative order k must be >= 0");
  require(opt.grid_points >= 2, ErrorCode::ResolutionTooLow, "window grid needs at least 2 points");

  ConvergenceReport report;
  report.regime = Regime::cigar;
  report.parameter_name = "beta";
  report.parameter = path.parameter;
  report.window_kind = "L";
  report.window = L;
  report.k = k;
  report.grid_points = opt.grid_points;
  report.driver_name = "beta1/beta2";
  report.rescaling = opt.rescaling == CigarRescaling::proof ? "proof" : "theorem";
  report.rate_band = std::make_pair(opt.rate_lo, opt.rate_hi);

  const double beta = path.parameter;
  for (std::size_t n = 0; n < path.steps.size(); ++n) {
    const SolitonProfile p = solve_coefficient(path.steps[n], opt.root_tol);
    require(p.a() > 0.0 && L < p.a() * p.length(), ErrorCode::WindowTooLarge,
            "window L exceeds a(beta1+beta2) at step " + std::to_string(n));
    StepRecord rec;
    rec.beta1 = p.beta1();
    rec.beta2 = p.beta2();
    rec.a = p.a();
    rec.driver = path.drivers[n];
    rec.errors.assign(static_cast<std::size_t>(k) + 1, 0.0);

    // Rescaled metric in the u chart: g_thth = scale * beta2^2 P, g_uu = 1 / (4 scale P),
    // scale = 1 for a g / 2 and 1/(a beta1) for beta2/(2 beta1) g.
    const double scale = opt.rescaling == CigarRescaling::proof ? 1.0 : 1.0 / p.a_beta1();
    double gthth_err = 0.0;
    double guu_rel_err = 0.0;
    for (int i = 0; i < opt.grid_points; ++i) {
      const double u = L * static_cast<double>(i) / (opt.grid_points - 1);
      for (int j = 0; j <= k; ++j) {
        const double dev = std::fabs(rescaled_cigar_profile_derivative(u, p, j) - cigar_limit_profile(u, j));
        auto& e = rec.errors[static_cast<std::size_t>(j)];
        e = std::max(e, dev);
      }
      const double P = rescaled_cigar_profile(u, p);
      gthth_err = std::max(gthth_err, std::fabs(scale * p.beta2() * p.beta2() * P - beta * beta * cigar_limit_profile(u)));
      if (u > 0.0) {
        const MetricCoefficients target = cigar_limit_target(u, beta);
        guu_rel_err = std::max(guu_rel_err, std::fabs((0.25 / (scale * P)) / target.g_tt - 1.0));
      }
    }
    rec.error_norm = *std::max_element(rec.errors.begin(), rec.errors.end());
    rec.diagnostics["a_beta1"] = p.a_beta1();
    rec.diagnostics["a_beta2"] = p.a_beta2();
    rec.diagnostics["curvature_sup"] = p.curvature_sup();
    rec.diagnostics["rescaling_discrepancy"] = std::fabs(1.0 / p.a_beta1() - 1.0);
    rec.diagnostics["metric_gthth_error"] = gthth_err;
    rec.diagnostics["metric_guu_rel_error"] = guu_rel_err;
    report.steps.push_back(std::move(rec));
  }
  detail::fit_rates(report);
  if (beta == 0.0) report.notes.emplace_back("beta = 0: collapsed fiber, limit is the half-line metric");
  report.verdict = detail::strictly_decreasing(report.steps) && report.fitted_rate.has_value() &&
                   *report.fitted_rate >= opt.rate_lo && *report.fitted_rate <= opt.rate_hi;
  return report;
}

/**
 * Cylinder limit on the window u in [-U, U] (tau = beta1 - u/a^2): per step,
 * the sup deviation of each u-derivative of a^2 g = (1/(2a^2 phi)) du^2 +
 * 2a^2 phi dtheta^2 from (1/2B) du^2 + 2B dtheta^2. Passes when the C^k error
 * decreases strictly, ends below the tolerance, and the rescaled curvature at
 * the basepoint ends below the curvature tolerance.
 */
[[nodiscard]] inline ConvergenceReport run_cylinder_limit(const LimitPath& path, double U, int k,
                                                          const CylinderLimitOptions& opt = {}) {
  require(path.regime == Regime::cylinder, ErrorCode::InvalidPath, "run_cylinder_limit needs a cylinder path");
  require(!path.steps.empty(), ErrorCode::InvalidPath, "empty limit path");
  require(U > 0.0 && std::isfinite(U), ErrorCode::DomainError, "window U must be positive");
  require(k >= 0, ErrorCode::DomainError, "derivative order k must be >= 0");
  require(opt.grid_points >= 2, ErrorCode::ResolutionTooLow, "window grid needs at least 2 points");

  const CylinderConstants kc = cylinder_constants(path.parameter, opt.root_tol);
  ConvergenceReport report;
  report.regime = Regime::cylinder;
  report.parameter_name = "c";
  report.parameter = path.parameter;
  report.window_kind = "U";
  report.window = U;
  report.k = k;
  report.grid_points = opt.grid_points;
  report.driver_name = "beta2";
  report.tolerance = opt.tolerance;
  report.constants = {{"b", kc.b}, {"B", kc.B}, {"C_of_c", kc.C_of_c}, {"c", kc.c}};

  const double target_uu = 0.5 / kc.B;
  const double target_thth = 2.0 * kc.B;
  const auto kk = static_cast<std::size_t>(k);
  for (std::size_t n = 0; n < path.steps.size(); ++n) {
    const SolitonProfile p = solve_coefficient(path.steps[n], opt.root_tol);
    const double a = p.a();
    require(a > 0.0 && U <= a * a * p.beta2() && U <= a * a * p.beta1(), ErrorCode::WindowTooLarge,
            "window [-U, U] exceeds the u domain at step " + std::to_string(n));
    StepRecord rec;
    rec.beta1 = p.beta1();
    rec.beta2 = p.beta2();
    rec.a = a;
    rec.driver = path.drivers[n];
    rec.errors.assign(kk + 1, 0.0);
    double profile_err = 0.0;
    std::vector<double> q(kk + 1);
    for (int i = 0; i < opt.grid_points; ++i) {
      const double u = -U + 2.0 * U * static_cast<double>(i) / (opt.grid_points - 1);
      for (std::size_t j = 0; j <= kk; ++j) q[j] = rescaled_cylinder_profile_derivative(u, p, static_cast<int>(j));
      const std::vector<double> r = detail::reciprocal_derivatives(q);
      profile_err = std::max(profile_err, std::fabs(q[0] - kc.B));
      for (std::size_t j = 0; j <= kk; ++j) {
        const double dev_uu = std::fabs(0.5 * r[j] - (j == 0 ? target_uu : 0.0));
        const double dev_thth = std::fabs(2.0 * q[j] - (j == 0 ? target_thth : 0.0));
        rec.errors[j] = std::max(rec.errors[j], std::max(dev_uu, dev_thth));
      }
    }
    rec.error_norm = *std::max_element(rec.errors.begin(), rec.errors.end());

    ChartContext ctx{p, kc.B};
    const ChartPoint base = chart_transform(ChartPoint{p.beta1(), 0.0, Chart::tau}, Chart::v, ctx);
    rec.diagnostics["profile_error"] = profile_err;
    rec.diagnostics["a_beta1"] = p.a_beta1();
    rec.diagnostics["a_beta2"] = p.a_beta2();
    rec.diagnostics["b_gap"] = std::fabs(p.a_beta2() - kc.b);
    rec.diagnostics["cb_gap"] = std::fabs(p.a_beta1() - kc.c * kc.b);
    rec.diagnostics["rescaled_curvature_base"] = curvature(p.beta1(), p) / (a * a);
    rec.diagnostics["basepoint_v"] = base.t;
    rec.diagnostics["theorem_gthth_base"] = 2.0 * phi(p.beta1(), p) / (p.beta1() * p.beta1());
    report.steps.push_back(std::move(rec));
  }
  detail::fit_rates(report);
  const StepRecord& last = report.steps.back();
  report.verdict = detail::strictly_decreasing(report.steps) && last.error_norm < opt.tolerance &&
                   last.diagnostics.at("rescaled_curvature_base") < opt.curvature_tolerance;
  return report;
}

}  // namespace football
