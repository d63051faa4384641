#pragma once

#include <stdexcept>
#include <string>

namespace secmimo {

// Parameter regime outside the model's validity (K >= N, alpha+beta >= 1,
// degenerate no-interference eavesdropper, ...).
class RegimeError : public std::runtime_error {
 public:
  explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergence, singular matrix, missing root.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secmimo
