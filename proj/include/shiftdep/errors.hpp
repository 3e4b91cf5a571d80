#pragma once

#include <stdexcept>
#include <string>

namespace shiftdep {

// Bad caller input: wrong sizes, out-of-domain parameters, reducible f.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query outside a precomputed range (e.g. rho beyond grid.u_max).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Valid mathematics we deliberately do not handle (non-monic f).
class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Polynomial identically zero modulo p.
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inverse or negative power of zero.
class DivisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured cost cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical guesses could not be separated at the current precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant violated; always a bug in an upstream stage.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace shiftdep
