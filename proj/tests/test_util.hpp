#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace testutil {

inline double rel(std::complex<double> a, std::complex<double> b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testutil
