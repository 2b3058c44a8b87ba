#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace genvec {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class FormatError : public Error {
public:
  explicit FormatError(const std::string &what, std::size_t line = 0,
                       std::size_t column = 0);

  std::size_t line() const noexcept { return _line; }
  std::size_t column() const noexcept { return _column; }

  /// Copy of this error with the line number set (column kept).
  FormatError at_line(std::size_t line) const;

private:
  std::string _message;
  std::size_t _line;
  std::size_t _column;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Valid request the library deliberately does not handle.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// A configured enumeration or search budget was exhausted.
class ResourceError : public Error {
public:
  using Error::Error;
};

} // namespace genvec
