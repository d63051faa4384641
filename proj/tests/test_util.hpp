#pragma once

#include <cmath>

#include "doctest.h"

namespace secmimo::testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace secmimo::testing
