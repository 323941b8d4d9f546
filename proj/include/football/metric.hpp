#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "football/error.hpp"
#include "football/quadrature.hpp"
#include "football/roots.hpp"
#include "football/soliton.hpp"

namespace football {

/// Value with first and second derivative in the chart variable.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

using CoefficientFn = std::function<Jet(double)>;

enum class Chart { tau, u_south, u_equatorial, v, r, s };

[[nodiscard]] constexpr std::string_view to_string(Chart c) noexcept {
  switch (c) {
    case Chart::tau: return "tau";
    case Chart::u_south: return "u_south";
    case Chart::u_equatorial: return "u_equatorial";
    case Chart::v: return "v";
    case Chart::r: return "r";
    case Chart::s: return "s";
  }
  return "unknown";
}

/**
 * Rotationally symmetric metric g_tt(t) dt^2 + g_thth(t) dtheta^2 on
 * (lo, hi) x S^1. A closed end is a genuine point of the surface (cone or
 * smooth pole) where g_thth vanishes; an open end is a window boundary or an
 * end at infinity. collapsed_fiber marks the degenerate g_thth == 0 case,
 * where the theta direction is quotiented out.
 */
struct RotSymMetric {
  CoefficientFn g_tt;
  CoefficientFn g_thth;
  double lo = 0.0;
  double hi = 0.0;
  Chart chart = Chart::tau;
  bool closed_lo = false;
  bool closed_hi = false;
  bool collapsed_fiber = false;
  std::string name;

  [[nodiscard]] bool finite_domain() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
  [[nodiscard]] bool contains(double t) const noexcept { return t > lo && t < hi; }
};

struct ChartPoint {
  double t = 0.0;
  double theta = 0.0;
  Chart chart = Chart::tau;

  static ChartPoint make(double t, double theta, Chart chart) {
    double th = std::fmod(theta, 2.0 * std::numbers::pi);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    return {t, th, chart};
  }
};

// ---------------------------------------------------------------------------
// Metric constructors

/// Football in the moment chart: (1/2phi) dtau^2 + 2phi dtheta^2 on (0, beta1+beta2).
[[nodiscard]] inline RotSymMetric football_metric(const SolitonProfile& p) {
  RotSymMetric m;
  m.g_tt = [p](double tau) {
    const double f = phi(tau, p);
    const double f1 = phi_prime(tau, p);
    const double f2 = phi_derivative(tau, p, 2);
    return Jet{0.5 / f, -0.5 * f1 / (f * f), -0.5 * f2 / (f * f) + f1 * f1 / (f * f * f)};
  };
  m.g_thth = [p](double tau) {
    return Jet{2.0 * phi(tau, p), 2.0 * phi_prime(tau, p), 2.0 * phi_derivative(tau, p, 2)};
  };
  m.lo = 0.0;
  m.hi = p.length();
  m.chart = Chart::tau;
  m.closed_lo = true;
  m.closed_hi = true;
  m.name = "football(" + num(p.beta1()) + "," + num(p.beta2()) + ")";
  return m;
}

/// Cone-cigar (dr^2 + beta^2 r^2 dtheta^2) / (1 + r^2) on r in (0, inf).
[[nodiscard]] inline RotSymMetric cigar_metric(double beta) {
  require(beta >= 0.0 && beta <= 1.0, ErrorCode::AngleOutOfRange, "cigar angle fraction must lie in [0, 1]");
  RotSymMetric m;
  m.g_tt = [](double r) {
    const double q = 1.0 / (1.0 + r * r);
    return Jet{q, -2.0 * r * q * q, (6.0 * r * r - 2.0) * q * q * q};
  };
  const double b2 = beta * beta;
  m.g_thth = [b2](double r) {
    const double q = 1.0 / (1.0 + r * r);
    return Jet{b2 * r * r * q, 2.0 * b2 * r * q * q, -b2 * (6.0 * r * r - 2.0) * q * q * q};
  };
  m.lo = 0.0;
  m.hi = std::numeric_limits<double>::infinity();
  m.chart = Chart::r;
  m.closed_lo = true;
  m.closed_hi = false;
  m.collapsed_fiber = (beta == 0.0);
  m.name = "cigar(" + num(beta) + ")";
  return m;
}

/// Flat cylinder dv^2 + dtheta^2, the log-chart pull-back of |dz|^2/|z|^2.
[[nodiscard]] inline RotSymMetric cylinder_metric() {
  RotSymMetric m;
  m.g_tt = [](double) { return Jet{1.0, 0.0, 0.0}; };
  m.g_thth = [](double) { return Jet{1.0, 0.0, 0.0}; };
  m.lo = -std::numeric_limits<double>::infinity();
  m.hi = std::numeric_limits<double>::infinity();
  m.chart = Chart::v;
  m.name = "cylinder";
  return m;
}

/// Multiplies both coefficients by lambda: distances scale by sqrt(lambda), curvature by 1/lambda.
[[nodiscard]] inline RotSymMetric rescale(const RotSymMetric& m, double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::NonpositiveScale, "rescale factor must be > 0");
  RotSymMetric out = m;
  auto scaled = [lambda](CoefficientFn fn) {
    return [lambda, fn = std::move(fn)](double t) {
      const Jet j = fn(t);
      return Jet{lambda * j.value, lambda * j.d1, lambda * j.d2};
    };
  };
  out.g_tt = scaled(m.g_tt);
  out.g_thth = scaled(m.g_thth);
  out.name = m.name + "*" + num(lambda);
  return out;
}

/**
 * Gaussian curvature of A dt^2 + G dtheta^2:
 * K = -(G''/(2G) - G'^2/(4G^2)) / A + G' A' / (4 G A^2).
 */
[[nodiscard]] inline double gaussian_curvature(const RotSymMetric& m, double t) {
  require(!m.collapsed_fiber, ErrorCode::DomainError, "curvature undefined on a collapsed fiber");
  require(m.contains(t), ErrorCode::DomainError, "curvature evaluated outside the open chart domain");
  const Jet a = m.g_tt(t);
  const Jet g = m.g_thth(t);
  return -(g.d2 / (2.0 * g.value) - g.d1 * g.d1 / (4.0 * g.value * g.value)) / a.value +
         g.d1 * a.d1 / (4.0 * g.value * a.value * a.value);
}

// ---------------------------------------------------------------------------
// Cigar moment profile

/// beta^2 (1 - e^{(tau - beta)/beta}) on (-inf, beta], with its first two derivatives.
[[nodiscard]] inline Jet cigar_moment_jet(double tau, double beta) {
  require(beta > 0.0 && beta <= 1.0, ErrorCode::AngleOutOfRange, "cigar moment profile needs beta in (0, 1]");
  require(tau <= beta, ErrorCode::DomainError, "cigar moment profile defined for tau <= beta");
  const double x = (tau - beta) / beta;
  const double e = std::exp(x);
  return Jet{-beta * beta * std::expm1(x), -beta * e, -e};
}

[[nodiscard]] inline double cigar_moment_profile(double tau, double beta) {
  return cigar_moment_jet(tau, beta).value;
}

// ---------------------------------------------------------------------------
// Chart transforms

/// Constants required by the chart chain: the profile (a, beta1, beta2) for
/// tau <-> u_south / u_equatorial / s, and B for u_equatorial <-> v.
struct ChartContext {
  std::optional<SolitonProfile> profile;
  std::optional<double> cylinder_B;
};

namespace detail {

inline const SolitonProfile& need_profile(const ChartContext& ctx, bool need_positive_a) {
  require(ctx.profile.has_value(), ErrorCode::DomainError, "chart transform requires a soliton profile");
  require(!need_positive_a || ctx.profile->a() > 0.0, ErrorCode::DomainError,
          "u charts are undefined on the constant-curvature branch a = 0");
  return *ctx.profile;
}

inline double need_B(const ChartContext& ctx) {
  require(ctx.cylinder_B.has_value() && *ctx.cylinder_B > 0.0, ErrorCode::DomainError,
          "v chart requires the cylinder constant B > 0");
  return *ctx.cylinder_B;
}

inline bool in_south_group(Chart c) { return c == Chart::u_south || c == Chart::r; }
inline bool in_equatorial_group(Chart c) { return c == Chart::u_equatorial || c == Chart::v; }

/// s(tau) = integral_{beta1}^{tau} dtau'/phi, i.e. ds = dtau/phi with s = 0 on the circle tau = beta1.
inline double tau_to_s(double tau, const SolitonProfile& p) {
  require(tau > 0.0 && tau < p.length(), ErrorCode::DomainError, "s chart covers only the open interval");
  auto inv_phi = [&p](double x) { return 1.0 / phi(x, p); };
  return quadrature::adaptive(inv_phi, p.beta1(), tau, 1e-13).value;
}

inline double s_to_tau(double s, const SolitonProfile& p) {
  require(std::isfinite(s), ErrorCode::DomainError, "s must be finite");
  const double base = p.beta1();
  if (s == 0.0) return base;
  // s(tau) is increasing and unbounded at both poles: walk toward the pole
  // on the side of s until the sign changes, then polish with Brent.
  auto g = [&p, s](double tau) { return tau_to_s(tau, p) - s; };
  double inner = base;
  double gap = (s > 0.0) ? p.length() - base : base;
  for (int k = 0; k < 1000; ++k) {
    gap *= 0.5;
    const double probe = (s > 0.0) ? p.length() - gap : gap;
    require(probe > 0.0 && probe < p.length(), ErrorCode::DomainError,
            "s value beyond the representable moment interval");
    const double g_probe = g(probe);
    if ((s > 0.0) == (g_probe >= 0.0)) {
      const double lo = std::min(inner, probe);
      const double hi = std::max(inner, probe);
      return roots::brent(g, lo, hi, g(lo), g(hi)).x;
    }
    inner = probe;
  }
  fail(ErrorCode::DomainError, "s value beyond the representable moment interval");
}

inline double to_tau(const ChartPoint& pt, const ChartContext& ctx) {
  switch (pt.chart) {
    case Chart::tau: {
      const SolitonProfile& p = need_profile(ctx, false);
      require(pt.t >= 0.0 && pt.t <= p.length(), ErrorCode::DomainError, "tau outside [0, beta1+beta2]");
      return pt.t;
    }
    case Chart::u_south: {
      const SolitonProfile& p = need_profile(ctx, true);
      require(pt.t >= 0.0 && pt.t <= p.a() * p.length(), ErrorCode::DomainError, "u_south outside [0, a(b1+b2)]");
      return p.length() - pt.t / p.a();
    }
    case Chart::r: {
      require(pt.t >= 0.0, ErrorCode::DomainError, "r must be >= 0");
      return to_tau(ChartPoint{std::log1p(pt.t * pt.t), pt.theta, Chart::u_south}, ctx);
    }
    case Chart::u_equatorial: {
      const SolitonProfile& p = need_profile(ctx, true);
      const double a2 = p.a() * p.a();
      require(pt.t >= -a2 * p.beta2() && pt.t <= a2 * p.beta1(), ErrorCode::DomainError,
              "u_equatorial outside [-a^2 beta2, a^2 beta1]");
      return p.beta1() - pt.t / a2;
    }
    case Chart::v:
      return to_tau(ChartPoint{2.0 * need_B(ctx) * pt.t, pt.theta, Chart::u_equatorial}, ctx);
    case Chart::s:
      return s_to_tau(pt.t, need_profile(ctx, false));
  }
  fail(ErrorCode::DomainError, "unknown chart");
}

inline double from_tau(double tau, Chart target, const ChartContext& ctx) {
  switch (target) {
    case Chart::tau: return tau;
    case Chart::u_south: {
      const SolitonProfile& p = need_profile(ctx, true);
      return p.a() * (p.length() - tau);
    }
    case Chart::r: {
      const double u = from_tau(tau, Chart::u_south, ctx);
      require(u >= 0.0, ErrorCode::DomainError, "u < 0 has no r preimage");
      return std::sqrt(std::expm1(u));
    }
    case Chart::u_equatorial: {
      const SolitonProfile& p = need_profile(ctx, true);
      return p.a() * p.a() * (p.beta1() - tau);
    }
    case Chart::v: return from_tau(tau, Chart::u_equatorial, ctx) / (2.0 * need_B(ctx));
    case Chart::s: return tau_to_s(tau, need_profile(ctx, false));
  }
  fail(ErrorCode::DomainError, "unknown chart");
}

}  // namespace detail

/**
 * Moves a point between charts. Within the south chain (u_south <-> r:
 * u = log(1 + r^2)) and the equatorial chain (u_equatorial <-> v:
 * v = u/(2B)) the substitution is applied directly; every other pair is
 * composed through the moment coordinate tau.
 */
[[nodiscard]] inline ChartPoint chart_transform(const ChartPoint& pt, Chart target, const ChartContext& ctx = {}) {
  if (pt.chart == target) return pt;
  if (detail::in_south_group(pt.chart) && detail::in_south_group(target)) {
    if (target == Chart::r) {
      require(pt.t >= 0.0, ErrorCode::DomainError, "u < 0 has no r preimage");
      return {std::sqrt(std::expm1(pt.t)), pt.theta, target};
    }
    require(pt.t >= 0.0, ErrorCode::DomainError, "r must be >= 0");
    return {std::log1p(pt.t * pt.t), pt.theta, target};
  }
  if (detail::in_equatorial_group(pt.chart) && detail::in_equatorial_group(target)) {
    const double B = detail::need_B(ctx);
    return {target == Chart::v ? pt.t / (2.0 * B) : 2.0 * B * pt.t, pt.theta, target};
  }
  const double tau = detail::to_tau(pt, ctx);
  return {detail::from_tau(tau, target, ctx), pt.theta, target};
}

}  // namespace football
