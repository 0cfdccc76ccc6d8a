#pragma once

#include <stdexcept>
#include <string>

namespace dsgc {

/// Invalid parameters, malformed input files, inconsistent configs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity is undefined for the given input (zero denominator, empty class).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Eigensolver failure, non-finite loss, and similar numerical breakdowns.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsgc
