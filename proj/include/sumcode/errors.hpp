#pragma once

#include <stdexcept>
#include <string>

namespace sumcode {

// Inputs whose lengths do not line up (e.g. message vectors of unequal k).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A value outside the operation's admissible range.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// An exhaustive computation that would exceed the configured size limits.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A codeword stream that cannot be parsed back into a sum estimate.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Block length the coding scheme cannot handle (odd k).
struct BlockLengthError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A consistency check failed mid-algorithm; the input violates a caller-side
// precondition that cannot be tested cheaply up front (e.g. a vector outside
// the label-distribution polytope handed to the decomposition).
struct DiagnosticFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}
