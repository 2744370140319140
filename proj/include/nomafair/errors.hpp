#pragma once

#include <stdexcept>
#include <string>

namespace nomafair {

// Argument outside the mathematical domain of a formula (non-positive SINR,
// non-finite input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Closed form with a vanishing denominator.
class SingularInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two routes that must agree did not; signals a numerical fault rather than
// bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed configuration or command-line value. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nomafair
