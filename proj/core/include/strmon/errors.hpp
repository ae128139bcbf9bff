#ifndef STRMON_ERRORS_HPP
#define STRMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace strmon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Access outside a signal's time domain under strict padding.
class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (trace files or specification text).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  explicit ParseError(const std::string& msg) : Error(msg), line_(0), col_(0) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Variable index or region dimensionality exceeds the signal dimension.
class DimensionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// The input contains a negation; formulas must be in positive normal form.
class NegationRejectedError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// An infinite temporal interval could not be clipped by a signal domain.
class UnboundedHorizonError : public Error {
 public:
  using Error::Error;
};

class WindowOutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle instance exceeds the documented enumeration budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// Invalid monitoring configuration (e.g. signed-distance predicates with an
/// L-infinity vector norm).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace strmon

#endif  // STRMON_ERRORS_HPP
