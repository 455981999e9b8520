#pragma once

#include <stdexcept>
#include <string>

namespace dstokes {

/// Invalid input: bad configuration, out-of-range parameters, mismatched sizes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed: singular matrix, non-convergence, degenerate geometry.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dstokes
