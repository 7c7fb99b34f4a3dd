#pragma once

#include <stdexcept>
#include <string>

namespace lieorbit {

// Shape mismatch between operands (non-square input, wrong vector length, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input lies outside the set where the operation is defined
// (H outside the closed Weyl chamber, r = infinity for a finite-only op, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Numerical structure did not close up: non-commuting operators,
// a root decomposition with missing dimensions, non-diagonalizable input.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unsupported algebra family / rank or malformed run configuration.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point that does not carry the construction tags an operation needs.
class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Randomly sampled data came out degenerate; callers may resample.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lieorbit
