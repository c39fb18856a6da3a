#pragma once

#include <stdexcept>
#include <string>

namespace vlat {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Raised when a combinatorial stream would exceed its configured cap.
struct EnumerationLimit : std::length_error {
  using std::length_error::length_error;
};

// A partition strategy produced no partitions to take a supremum/infimum over.
struct EmptyStrategy : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Factor extraction was requested from a superoperator held only as a rep.
struct MissingFactorForm : std::logic_error {
  using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (a structural invariant was broken).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace vlat
