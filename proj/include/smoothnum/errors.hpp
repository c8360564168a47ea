#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smoothnum {

enum class ErrorKind {
  Domain,       // argument outside the mathematical domain
  Range,        // argument outside a table or list that was built
  Pole,         // evaluation at a pole
  Singularity,  // evaluation at or too near a zero of zeta
  Parse,        // malformed input file or flag
  Resource,     // request exceeds the configured resource envelope
  Io,           // filesystem failure
};

std::string_view to_string(ErrorKind kind);

/// Base exception carrying a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::Range, what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(ErrorKind::Pole, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what)
      : Error(ErrorKind::Singularity, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(ErrorKind::Parse, line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::Resource, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace smoothnum
