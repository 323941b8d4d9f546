#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "football/limits.hpp"
#include "json.hpp"

namespace football {

namespace detail {

inline nlohmann::ordered_json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace detail

/**
 * JSON form of a report. Key order is fixed, so identical reports
 * serialize to identical bytes.
 */
[[nodiscard]] inline nlohmann::ordered_json to_json(const ConvergenceReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["regime"] = std::string(to_string(r.regime));
  j["parameter"] = {{"name", r.parameter_name}, {"value", r.parameter}};
  ordered_json window;
  window["kind"] = r.window_kind;
  if (r.window_kind == "L") {
    window["lo"] = 0.0;
  } else {
    window["lo"] = -r.window;
  }
  window["hi"] = r.window;
  window["k"] = r.k;
  window["grid_points"] = r.grid_points;
  j["window"] = window;
  j["driver"] = r.driver_name;
  if (!r.rescaling.empty()) j["rescaling"] = r.rescaling;

  ordered_json steps = ordered_json::array();
  for (const auto& s : r.steps) {
    ordered_json row;
    row["beta1"] = s.beta1;
    row["beta2"] = s.beta2;
    row["a"] = s.a;
    row["driver"] = s.driver;
    for (std::size_t i = 0; i < s.errors.size(); ++i) row["error_C" + std::to_string(i)] = detail::number_or_null(s.errors[i]);
    row["error_norm"] = detail::number_or_null(s.error_norm);
    ordered_json diag = ordered_json::object();
    for (const auto& [key, value] : s.diagnostics) diag[key] = detail::number_or_null(value);
    row["diagnostics"] = diag;
    steps.push_back(row);
  }
  j["steps"] = steps;
  j["fitted_rate"] = r.fitted_rate ? ordered_json(*r.fitted_rate) : ordered_json(nullptr);
  ordered_json order_rates = ordered_json::array();
  for (const auto& o : r.order_rates) order_rates.push_back(o ? ordered_json(*o) : ordered_json(nullptr));
  j["order_rates"] = order_rates;
  if (r.rate_band) j["rate_band"] = {r.rate_band->first, r.rate_band->second};
  if (r.tolerance) j["tolerance"] = *r.tolerance;
  ordered_json constants = ordered_json::object();
  for (const auto& [key, value] : r.constants) constants[key] = value;
  j["constants"] = constants;
  j["verdict"] = r.verdict ? "pass" : "fail";
  j["notes"] = r.notes;
  return j;
}

/// One row per step: beta1,beta2,a,driver,error_C0..error_Ck,error_norm, then diagnostics by name.
inline void write_report_csv(std::ostream& os, const ConvergenceReport& r) {
  std::vector<std::string> diag_keys;
  if (!r.steps.empty()) {
    for (const auto& [key, value] : r.steps.front().diagnostics) diag_keys.push_back(key);
  }
  os << "beta1,beta2,a,driver";
  for (int i = 0; i <= r.k; ++i) os << ",error_C" << i;
  os << ",error_norm";
  for (const auto& key : diag_keys) os << ',' << key;
  os << '\n';
  for (const auto& s : r.steps) {
    os << detail::fmt("%.17g", s.beta1) << ',' << detail::fmt("%.17g", s.beta2) << ','
       << detail::fmt("%.17g", s.a) << ',' << detail::fmt("%.17g", s.driver);
    for (double e : s.errors) os << ',' << detail::fmt("%.17g", e);
    os << ',' << detail::fmt("%.17g", s.error_norm);
    for (const auto& key : diag_keys) os << ',' << detail::fmt("%.17g", s.diagnostics.at(key));
    os << '\n';
  }
}

/**
 * Log-log plot of the C^k error against the path driver, with the
 * least-squares line over the fitted steps and its slope printed.
 */
inline void write_report_svg(std::ostream& os, const ConvergenceReport& r) {
  constexpr double width = 640.0;
  constexpr double height = 420.0;
  constexpr double left = 80.0;
  constexpr double right = 30.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;

  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& s : r.steps) {
    if (s.driver > 0.0 && s.error_norm > 0.0) {
      lx.push_back(std::log10(s.driver));
      ly.push_back(std::log10(s.error_norm));
    }
  }
  double x0 = -1.0;
  double x1 = 0.0;
  double y0 = -1.0;
  double y1 = 0.0;
  if (!lx.empty()) {
    x0 = std::floor(*std::min_element(lx.begin(), lx.end()));
    x1 = std::ceil(*std::max_element(lx.begin(), lx.end()));
    y0 = std::floor(*std::min_element(ly.begin(), ly.end()));
    y1 = std::ceil(*std::max_element(ly.begin(), ly.end()));
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
  }
  auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * (width - left - right); };
  auto py = [&](double v) { return height - bottom - (v - y0) / (y1 - y0) * (height - top - bottom); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << to_string(r.regime) << " limit: C^" << r.k << " error vs " << r.driver_name << "</text>\n";
  os << "<g stroke=\"#ddd\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double v = x0; v <= x1 + 1e-9; v += 1.0) {
    os << "<line x1=\"" << detail::fmt("%.2f", px(v)) << "\" y1=\"" << top << "\" x2=\"" << detail::fmt("%.2f", px(v))
       << "\" y2=\"" << height - bottom << "\"/>\n";
    os << "<text stroke=\"none\" fill=\"black\" x=\"" << detail::fmt("%.2f", px(v)) << "\" y=\"" << height - bottom + 16
       << "\" text-anchor=\"middle\">1e" << static_cast<int>(v) << "</text>\n";
  }
  for (double v = y0; v <= y1 + 1e-9; v += 1.0) {
    os << "<line x1=\"" << left << "\" y1=\"" << detail::fmt("%.2f", py(v)) << "\" x2=\"" << width - right
       << "\" y2=\"" << detail::fmt("%.2f", py(v)) << "\"/>\n";
    os << "<text stroke=\"none\" fill=\"black\" x=\"" << left - 6 << "\" y=\"" << detail::fmt("%.2f", py(v) + 4)
       << "\" text-anchor=\"end\">1e" << static_cast<int>(v) << "</text>\n";
  }
  os << "</g>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
     << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << r.driver_name << "</text>\n";

  if (!lx.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < lx.size(); ++i) {
      os << (i ? " " : "") << detail::fmt("%.2f", px(lx[i])) << ',' << detail::fmt("%.2f", py(ly[i]));
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < lx.size(); ++i) {
      os << "<circle cx=\"" << detail::fmt("%.2f", px(lx[i])) << "\" cy=\"" << detail::fmt("%.2f", py(ly[i]))
         << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
  }
  if (r.fitted_rate && lx.size() >= 2) {
    const std::size_t n = std::min<std::size_t>(4, lx.size());
    const std::size_t first = lx.size() - n;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = first; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    const double slope = *r.fitted_rate;
    const double xa = *std::min_element(lx.begin() + static_cast<std::ptrdiff_t>(first), lx.end());
    const double xb = *std::max_element(lx.begin() + static_cast<std::ptrdiff_t>(first), lx.end());
    os << "<line x1=\"" << detail::fmt("%.2f", px(xa)) << "\" y1=\"" << detail::fmt("%.2f", py(my + slope * (xa - mx)))
       << "\" x2=\"" << detail::fmt("%.2f", px(xb)) << "\" y2=\"" << detail::fmt("%.2f", py(my + slope * (xb - mx)))
       << "\" stroke=\"#d62728\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << left + 12 << "\" y=\"" << top + 20
       << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#d62728\">fitted slope = "
       << detail::fmt("%.4f", slope) << "</text>\n";
  } else {
    os << "<text x=\"" << left + 12 << "\" y=\"" << top + 20
       << "\" font-family=\"sans-serif\" font-size=\"13\">no fitted slope</text>\n";
  }
  os << "<text x=\"" << width - right - 8 << "\" y=\"" << top + 20
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\">verdict: " << (r.verdict ? "pass" : "fail")
     << "</text>\n";
  os << "</svg>\n";
}

}  // namespace football
