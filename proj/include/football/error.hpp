#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace football {

enum class ErrorCode {
  AngleOutOfRange,
  DegenerateAngles,
  BracketFailure,
  DomainError,
  NonpositiveScale,
  DivergentIntegral,
  ResolutionTooLow,
  DisconnectedMesh,
  EmbeddingObstruction,
  WindowTooLarge,
  RatioOutOfRange,
  InvalidPath,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::DegenerateAngles: return "DegenerateAngles";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::DisconnectedMesh: return "DisconnectedMesh";
    case ErrorCode::EmbeddingObstruction: return "EmbeddingObstruction";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorCode::InvalidPath: return "InvalidPath";
  }
  return "Unknown";
}

/// Single exception type for the library; inspect code() to branch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Shortest round-trip text for a double, for error messages.
[[nodiscard]] inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace football
