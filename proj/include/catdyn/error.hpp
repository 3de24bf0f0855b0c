#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace catdyn {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different coefficient fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Scalar extension requested without a declared field embedding.
class NoEmbedding : public Error {
 public:
  using Error::Error;
};

/// Precondition on an argument failed (shape, range, spherical class, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// DSL / scenario text could not be parsed. Carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The algebra is not smooth within the resolution bound that was tried.
class NotSmooth : public Error {
 public:
  using Error::Error;
};

/// A resource cap was hit part way through a power sequence.
class ResourceCapExceeded : public Error {
 public:
  ResourceCapExceeded(const std::string& what, int last_completed)
      : Error(what + " (last completed power: " + std::to_string(last_completed) + ")"),
        last_completed_(last_completed) {}

  int last_completed() const noexcept { return last_completed_; }

 private:
  int last_completed_;
};

}  // namespace catdyn
