#pragma once

#include <cmath>
#include <vector>

#include "qqstab/numeric.hpp"

namespace testsupport {

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

/// a x^4 + b x^2 in long double, independent of the library's evaluator.
inline long double poly(long double a, long double b, long double x) {
  return a * x * x * x * x + b * x * x;
}

/// The 21 default grid abscissae: round(-2 + k/5) to the nearest 1/16.
inline std::vector<double> default_axis() {
  std::vector<double> out;
  for (int k = 0; k <= 20; ++k) {
    const double v = -2.0 + 0.2 * k;
    out.push_back(std::round(v * 16) / 16 + 0.0);
  }
  return out;
}

}  // namespace testsupport
