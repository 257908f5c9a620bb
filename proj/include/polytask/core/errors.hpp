#pragma once

#include <stdexcept>
#include <string>

namespace polytask {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RegistrationError : public Error {
 public:
  using Error::Error;
};

class UnknownTaskError : public Error {
 public:
  explicit UnknownTaskError(const std::string& task_id) : Error("unknown task: " + task_id) {}
};

/// Missing pack, schema violation or placeholder mismatch.
class PackError : public Error {
 public:
  using Error::Error;
};

class RenderError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data: instance files, ledgers, ragged record sets.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Transport failure or non-success HTTP status from a model endpoint.
class EndpointError : public Error {
 public:
  EndpointError(const std::string& message, int status = 0) : Error(message), status_(status) {}
  [[nodiscard]] int status() const { return status_; }

 private:
  int status_;
};

}  // namespace polytask
