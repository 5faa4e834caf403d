#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zlp {

enum class ErrorCode {
  InvalidArgument,
  OutOfDomain,
  PoleAtOne,
  NoConvergence,
  CapacityExceeded,
  ToleranceNotReached,
  DivergentAtBoundary,
  NoBracket,
  InvalidFigure,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::DivergentAtBoundary: return "DivergentAtBoundary";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::InvalidFigure: return "InvalidFigure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zlp
