#pragma once

#include <stdexcept>
#include <string>

namespace atomwall {

/// Failure categories. The C API and the CLI exit codes are derived from these.
enum class ErrorKind {
  Domain,        // argument outside an operation's mathematical domain
  Configuration, // model or run configuration that cannot be evaluated
  Validation,    // data file or config content rejected (carries location)
  Numerical,     // quadrature or series failed to converge
  Usage,         // inconsistent combination of otherwise valid inputs
  Io,            // file could not be opened
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ConfigurationError : public Error {
public:
  explicit ConfigurationError(const std::string& what) : Error(ErrorKind::Configuration, what) {}
};

/// Rejected file content. `location()` is "path:line" or "path:field".
class ValidationError : public Error {
public:
  ValidationError(const std::string& location, const std::string& what)
      : Error(ErrorKind::Validation, location.empty() ? what : location + ": " + what),
        location_(location) {}
  const std::string& location() const noexcept { return location_; }

private:
  std::string location_;
};

/// Convergence failure. `diagnostics()` holds the state at the point of giving up.
class NumericalError : public Error {
public:
  NumericalError(const std::string& what, const std::string& diagnostics)
      : Error(ErrorKind::Numerical, what + " [" + diagnostics + "]"), diagnostics_(diagnostics) {}
  const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
  std::string diagnostics_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

} // namespace atomwall
