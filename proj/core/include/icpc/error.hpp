#pragma once

#include <stdexcept>
#include <string>

namespace icpc {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or flag values (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File-system and serialization failures (CLI exit code 2).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Scorer-backend failures: unreadable model, vocabulary mismatch,
/// sequences exceeding the positional limit (CLI exit code 3).
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace icpc
