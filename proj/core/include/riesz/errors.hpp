#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Bad input: malformed descriptors, precondition violations, unsupported
// shape/stratum combinations. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerically meaningful request outside the domain where the requested
// estimator is defined (exponent below an integrability threshold, z on or
// too close to a pole). The CLI maps this to exit code 3.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace riesz
