#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfl {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DimMismatch,
  NonFinite,
  InvalidState,
  NonPositiveTemperature,
  ProbabilityOutOfRange,
  NegativeTime,
  NotTracePreserving,
  InvalidTrajectory,
  TrackingFailure,
  InvalidSpec,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; `code()` distinguishes failure kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by trajectory analysis when eigenpair matching across an interval
// is ambiguous. Carries the offending interval (samples [interval, interval+1]).
class TrackingError : public Error {
 public:
  TrackingError(std::size_t interval, const std::string& what)
      : Error(ErrorCode::TrackingFailure,
              "interval " + std::to_string(interval) + ": " + what),
        interval_(interval) {}

  std::size_t interval() const noexcept { return interval_; }

 private:
  std::size_t interval_;
};

}  // namespace qfl
