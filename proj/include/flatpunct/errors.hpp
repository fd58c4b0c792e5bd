#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatpunct {

enum class ErrorCode {
  DomainError,
  DegenerateTriangle,
  WedgeTooLarge,
  InvalidMetric,
  PositiveCurvature,
  UnsupportedArity,
  AllEqual,
  IterationLimit,
  SearchExhausted,
  TargetNotGreater,
  ReplayFailure,
  RequiresExact,
  ArityError,
  OutOfRange,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `step()` is set when the failure
/// happened while replaying a modification plan.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(message), code_(code), step_(step) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> step_;
};

}  // namespace flatpunct
