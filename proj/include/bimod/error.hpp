#pragma once

#include <stdexcept>
#include <string>

namespace bimod {

enum class ErrorKind {
  Schema,
  Validation,
  DepthZero,
  NoConvergence,
  IncomposableWord,
  AmbiguousTruncation,
  NoExtension,
  InconsistentWeight,
  MissingWeight,
  NonPositiveScalar,
  NotAWeight,
  TruncationExhausted,
  TheoremViolation,
  NotAGroup,
  NotASubgroup,
  LimitExceeded,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind is what callers (and the
/// CLI exit-code table) dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bimod
