#include "hyperbeta/error.hpp"

namespace hyperbeta {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::EdgeSizeOutsideSpace: return "EdgeSizeOutsideSpace";
  case ErrorCode::EdgeOutsideSpace: return "EdgeOutsideSpace";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::DuplicateEdge: return "DuplicateEdge";
  case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
  case ErrorCode::EdgeTooSmall: return "EdgeTooSmall";
  case ErrorCode::RepeatedNode: return "RepeatedNode";
  case ErrorCode::NonpositiveDegree: return "NonpositiveDegree";
  case ErrorCode::ZeroMarginWithPositiveTarget: return "ZeroMarginWithPositiveTarget";
  case ErrorCode::ProbabilityOnBoundary: return "ProbabilityOnBoundary";
  case ErrorCode::DegenerateDesign: return "DegenerateDesign";
  case ErrorCode::EmptySampleSet: return "EmptySampleSet";
  case ErrorCode::DomainError: return "DomainError";
  case ErrorCode::FitFailed: return "FitFailed";
  case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

ParseError::ParseError(ErrorCode reason, int line, const std::string& message)
    : Error(ErrorCode::ParseError,
            "line " + std::to_string(line) + ": " + std::string(to_string(reason)) + ": " + message),
      reason_(reason), line_(line)
{
}

} // namespace hyperbeta
