#pragma once

#include <stdexcept>
#include <string>

namespace magnent {

/// Bad user input: malformed config, out-of-range couplings, unknown labels.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Bogoliubov stage is not defined at this point (|gamma/kappa| >= 1 or |Gamma| >= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The truncated Fock space could not hold the state within the requested tail weight.
class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace magnent
