#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace football::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on P_n for the roots; weights from P_n'.
[[nodiscard]] inline GaussLegendreRule gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

inline const GaussLegendreRule& default_rule() {
  static const GaussLegendreRule rule = gauss_legendre(10);
  return rule;
}

template <class F>
[[nodiscard]] double apply_rule(const GaussLegendreRule& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Composite rule with `panels` equal panels of a fixed order (order 1 is
/// the midpoint rule).
template <class F>
[[nodiscard]] double fixed_panels(F&& f, double a, double b, int panels, int order) {
  const GaussLegendreRule rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == panels) ? b : lo + h;
    sum += apply_rule(rule, f, lo, hi);
  }
  return sum;
}

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

namespace detail {

template <class F>
void adaptive_step(F& f, double a, double b, double whole, double tol, int depth, int& budget, QuadResult& out) {
  const GaussLegendreRule& rule = default_rule();
  const double mid = 0.5 * (a + b);
  const double left = apply_rule(rule, f, a, mid);
  const double right = apply_rule(rule, f, mid, b);
  const double refined = left + right;
  const double diff = std::fabs(refined - whole);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(refined);
  budget -= 2;
  if (depth <= 0 || budget <= 0 || !std::isfinite(diff) || diff <= tol || diff <= floor || !(mid > a && mid < b)) {
    out.value += refined;
    out.error_estimate += diff;
    out.panels += 2;
    return;
  }
  adaptive_step(f, a, mid, left, 0.5 * tol, depth - 1, budget, out);
  adaptive_step(f, mid, b, right, 0.5 * tol, depth - 1, budget, out);
}

}  // namespace detail

/// Adaptive bisection of 10-point Gauss-Legendre panels to an absolute
/// tolerance. The integrand must be finite on the open interval.
template <class F>
[[nodiscard]] QuadResult adaptive(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 48,
                                  int max_panels = 1 << 16) {
  QuadResult out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double whole = apply_rule(default_rule(), f, a, b);
  int budget = max_panels;
  detail::adaptive_step(f, a, b, whole, abs_tol, max_depth, budget, out);
  out.value *= sign;
  return out;
}

namespace detail {

/// t moved off the endpoint e by at least one ulp toward the interior (direction dir).
inline double off_endpoint(double e, double t, double dir) {
  return t == e ? std::nextafter(e, dir * std::numeric_limits<double>::infinity()) : t;
}

}  // namespace detail

/**
 * Integral of f over [a, b] where f may carry an inverse-square-root
 * singularity at a (singular_a) and/or b (singular_b). Near a singular end the
 * substitution t = a + s^2 (mirrored at b) makes the integrand smooth. The
 * Jacobian uses the offset t - a actually represented, not s^2.
 */
template <class F>
[[nodiscard]] QuadResult endpoint_singular(F&& f, double a, double b, bool singular_a, bool singular_b,
                                           double abs_tol = 1e-12) {
  if (!singular_a && !singular_b) return adaptive(f, a, b, abs_tol);
  QuadResult total;
  auto accumulate = [&total](const QuadResult& part) {
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.panels += part.panels;
  };
  double lo = a;
  double hi = b;
  const double mid = 0.5 * (a + b);
  if (singular_a) {
    const double cut = singular_b ? mid : b;
    auto g = [&f, a](double s) {
      const double t = detail::off_endpoint(a, a + s * s, 1.0);
      return 2.0 * std::sqrt(t - a) * f(t);
    };
    accumulate(adaptive(g, 0.0, std::sqrt(cut - a), singular_b ? 0.5 * abs_tol : abs_tol));
    lo = cut;
  }
  if (singular_b) {
    const double cut = singular_a ? mid : a;
    auto g = [&f, b](double s) {
      const double t = detail::off_endpoint(b, b - s * s, -1.0);
      return 2.0 * std::sqrt(b - t) * f(t);
    };
    accumulate(adaptive(g, 0.0, std::sqrt(b - cut), singular_a ? 0.5 * abs_tol : abs_tol));
    hi = cut;
  }
  if (hi > lo) accumulate(adaptive(f, lo, hi, abs_tol));
  return total;
}

}  // namespace football::quadrature
