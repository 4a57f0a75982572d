#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relatio {

enum class ErrorCode {
  UnknownSymbol,
  ArityMismatch,
  UnbalancedParenthesis,
  EmptyInput,
  UnexpectedToken,
  InvalidSignature,
  OutOfUniverse,
  MissingTable,
  UniverseTooLarge,
  PremiseSetTooLarge,
  IndeterminateNontriviality,
  CapMismatch,
  UnknownProperty,
  InvalidDefinition,
  InvalidCompanionSpec,
  Io,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Syntax errors also carry the 1-based line and column of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column)
      : Error(code, message + " at " + std::to_string(line) + ":" + std::to_string(column)),
        detail_(message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace relatio
