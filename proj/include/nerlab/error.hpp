#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nerlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mention or tag sequence cannot be mapped onto the token grid.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// An object violates a data-model invariant (bad span, duplicate id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `where` is a JSON pointer or "line N".
class ParseError : public Error {
 public:
  ParseError(std::string message, std::string where)
      : Error(where.empty() ? message : where + ": " + message),
        message_(std::move(message)),
        where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }
  const std::string& message() const noexcept { return message_; }

  /// Same error with `file:` prepended to the location.
  ParseError in_file(const std::string& file) const { return {message_, file + ":" + where_}; }

 private:
  std::string message_;
  std::string where_;
};

/// Inconsistent configuration (thresholds, dimensions, unknown group labels).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined for the given input (e.g. no tokens).
class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace nerlab
