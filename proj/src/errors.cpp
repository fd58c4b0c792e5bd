#include "flatpunct/errors.hpp"

namespace flatpunct {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::WedgeTooLarge: return "WedgeTooLarge";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::PositiveCurvature: return "PositiveCurvature";
    case ErrorCode::UnsupportedArity: return "UnsupportedArity";
    case ErrorCode::AllEqual: return "AllEqual";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::TargetNotGreater: return "TargetNotGreater";
    case ErrorCode::ReplayFailure: return "ReplayFailure";
    case ErrorCode::RequiresExact: return "RequiresExact";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace flatpunct
