#pragma once

#include <stdexcept>
#include <string>

namespace infodilog {

// Raised when an argument falls outside the domain of an algebraic
// operation (non-invertible dual number, degenerate dilogarithm symbol, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised for malformed user input: unparsable numbers, distributions that
// do not sum to one, ragged tables.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace infodilog
