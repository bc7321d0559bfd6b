#pragma once

#include <stdexcept>
#include <string>

namespace acd {

/// Malformed inputs: bad grammar, dimension mismatches, invalid options.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failures: SVD non-convergence, divergence, degenerate geometry,
/// ill-conditioned eigenbases, solver non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File access and file format problems.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace acd
