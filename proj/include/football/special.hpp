#pragma once

#include <cmath>

namespace football::special {

// Below this magnitude exprel2 switches to its Taylor series.
inline constexpr double kExprel2SeriesThreshold = 0.5;

/**
 * exprel(x) = (e^x - 1) / x, with exprel(0) = 1.
 *
 * expm1 keeps full relative accuracy for small |x|; callers use negative
 * arguments, so (1 - e^{-u}) / u = exprel(-u).
 */
[[nodiscard]] inline double exprel(double x) noexcept {
  if (x == 0.0) return 1.0;
  return std::expm1(x) / x;
}

/**
 * exprel2(x) = (e^x - 1 - x) / x^2, with exprel2(0) = 1/2.
 *
 * Series: sum_{k>=0} x^k / (k+2)!.
 */
[[nodiscard]] inline double exprel2(double x) noexcept {
  if (std::fabs(x) < kExprel2SeriesThreshold) {
    double term = 0.5;
    double sum = 0.5;
    for (int k = 1; k < 24; ++k) {
      term *= x / static_cast<double>(k + 2);
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  return (std::expm1(x) - x) / (x * x);
}

/// 1 - (1+b) e^{-b} without cancellation for small b.
[[nodiscard]] inline double one_minus_one_plus_x_exp_minus_x(double b) noexcept {
  if (b <= 1.0) return std::exp(-b) * b * b * exprel2(b);
  return 1.0 - (1.0 + b) * std::exp(-b);
}

}  // namespace football::special
