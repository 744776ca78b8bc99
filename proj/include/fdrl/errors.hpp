#pragma once

#include <stdexcept>
#include <string>

namespace fdrl {

/// Invalid or inconsistent configuration (bad key, value, or topology request).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Missing or malformed runtime data, e.g. a sensor reading that never arrived.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two reports that cannot be compared (different seeds or topologies).
class ComparisonError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace fdrl
