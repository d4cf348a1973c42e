#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gknot {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed diagram input (Gauss code with a symbol not used exactly twice,
// pairing that is not a perfect matching, ...).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Text that does not follow a grammar; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Operation applied outside its domain (identity passed where a non-trivial
// element is required, multi-component input to a knot invariant, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Element does not belong to the group it is used with.
class TypeError : public Error {
 public:
  using Error::Error;
};

// Local operation that cannot be performed at the requested place.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

// A move site that is not valid for the diagram it is applied to.
class StaleSite : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration hit its hard cap.
class CanonicalizationOverflow : public Error {
 public:
  using Error::Error;
};

// Input outside the sizes the library agrees to handle.
class ScaleLimit : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gknot
