#pragma once

#include <stdexcept>
#include <string>

namespace ssdb {

/// Failure categories surfaced by the library. Every thrown exception is an
/// Error carrying one of these codes, so callers (and the CLI) can map
/// failures to stable names without parsing messages.
enum class ErrorCode {
  NotSymmetric,
  NotInvolutive,
  DimensionMismatch,
  InvalidArgument,
  NotQPositive,
  NotQNegative,
  SpaceMismatch,
  ComplementNotQNegative,
  SingularSystem,
  NotMonotoneMatrix,
  NotMonotone,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssdb
