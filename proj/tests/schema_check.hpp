#pragma once

// Minimal JSON-schema checker covering the keywords used by schemas/*.json:
// type, enum, required, properties, patternProperties, additionalProperties,
// items, minItems, maxItems, minimum, maximum, exclusiveMinimum.

#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"

namespace schema {

using nlohmann::json;

inline json load(const std::string& path) {
  std::ifstream f(path);
  return json::parse(f);
}

namespace detail {

inline bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  return false;
}

}  // namespace detail

inline void check(const json& s, const json& v, const std::string& path, std::vector<std::string>& errors) {
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || detail::has_type(v, t.get<std::string>());
    } else {
      ok = detail::has_type(v, s["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": wrong type");
      return;
    }
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& e : s["enum"]) ok = ok || e == v;
    if (!ok) errors.push_back(path + ": not in enum");
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (s.contains("minimum") && x < s["minimum"].get<double>()) errors.push_back(path + ": below minimum");
    if (s.contains("maximum") && x > s["maximum"].get<double>()) errors.push_back(path + ": above maximum");
    if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
      errors.push_back(path + ": not above exclusiveMinimum");
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) errors.push_back(path + ": too few items");
    if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) errors.push_back(path + ": too many items");
    if (s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
    }
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& k : s["required"]) {
        if (!v.contains(k.get<std::string>())) errors.push_back(path + ": missing " + k.get<std::string>());
      }
    }
    for (const auto& [key, value] : v.items()) {
      bool matched = false;
      if (s.contains("properties") && s["properties"].contains(key)) {
        matched = true;
        check(s["properties"][key], value, path + "." + key, errors);
      }
      if (s.contains("patternProperties")) {
        for (const auto& [pattern, sub] : s["patternProperties"].items()) {
          if (std::regex_search(key, std::regex(pattern))) {
            matched = true;
            check(sub, value, path + "." + key, errors);
          }
        }
      }
      if (!matched && s.contains("additionalProperties")) {
        const json& extra = s["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) errors.push_back(path + ": unexpected key " + key);
        } else {
          check(extra, value, path + "." + key, errors);
        }
      }
    }
  }
}

inline std::vector<std::string> validate(const json& s, const json& v) {
  std::vector<std::string> errors;
  check(s, v, "$", errors);
  return errors;
}

}  // namespace schema
