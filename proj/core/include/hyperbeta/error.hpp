#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperbeta {

enum class ErrorCode {
  InvalidArgument,
  EdgeSizeOutsideSpace,
  EdgeOutsideSpace,
  ParseError,
  DuplicateEdge,
  NodeOutOfRange,
  EdgeTooSmall,
  RepeatedNode,
  NonpositiveDegree,
  ZeroMarginWithPositiveTarget,
  ProbabilityOnBoundary,
  DegenerateDesign,
  EmptySampleSet,
  DomainError,
  FitFailed,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Text-format failure. `reason()` is the underlying cause (DuplicateEdge,
/// NodeOutOfRange, EdgeTooSmall, RepeatedNode, or ParseError for syntax).
class ParseError : public Error {
public:
  ParseError(ErrorCode reason, int line, const std::string& message);

  ErrorCode reason() const noexcept { return reason_; }
  int line() const noexcept { return line_; }

private:
  ErrorCode reason_;
  int line_;
};

} // namespace hyperbeta
