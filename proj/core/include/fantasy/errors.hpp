#pragma once

#include <stdexcept>
#include <string>

namespace fantasy {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, e.g. "dataset_integrity".
  virtual const char* kind() const noexcept { return "error"; }
};

/// A record could not be parsed. `locator` names the file and line/record.
class ParseError : public Error {
 public:
  ParseError(std::string locator, const std::string& message)
      : Error(locator + ": " + message), locator_(std::move(locator)) {}
  const char* kind() const noexcept override { return "parse"; }
  const std::string& locator() const noexcept { return locator_; }

 private:
  std::string locator_;
};

class DatasetIntegrityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dataset_integrity"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

class ParameterError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parameter"; }
};

/// No team satisfying the constraint set can be drawn from the pool.
class InfeasibleError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "infeasible"; }
};

class StructureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "structure"; }
};

}  // namespace fantasy
