#pragma once

#include <stdexcept>
#include <string>

namespace quditcorr {

// The star/wedge products carry a 1/(d-2) prefactor and are undefined for
// qubits; callers must branch on d before using them.
class StarUndefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonUnitaryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonOrthogonalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a requested (x, y, K) combination reconstructs to a matrix
// with a negative eigenvalue, i.e. a point outside the state set.
class NotAStateError : public std::runtime_error {
 public:
  explicit NotAStateError(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_ = 0.0;
};

class FamilyRangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RejectionExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signals that two algebraically equivalent computations disagreed beyond
// tolerance (a basis or index-ordering bug, not a user error).
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// State files that fail invariant validation on load.
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace quditcorr
