#pragma once

// Extended-precision scalar types for quantities whose cancellation exceeds
// double precision (high-order core-shell resonance conditions).

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "alr/numeric.hpp"
#include "alr/specfun.hpp"

namespace alr {

namespace mp {
using real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>, boost::multiprecision::et_off>;
using complex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<80>>, boost::multiprecision::et_off>;
}  // namespace mp

template <>
struct complex_of<mp::real> {
  using type = mp::complex;
};

template <>
struct real_of<mp::complex> {
  using type = mp::real;
};

namespace num {

template <>
inline double to_double<mp::real>(const mp::real& x) {
  return x.convert_to<double>();
}

template <>
inline cdouble to_cdouble<mp::complex>(const mp::complex& z) {
  return {real(z).convert_to<double>(), imag(z).convert_to<double>()};
}

template <>
inline bool is_finite<mp::real>(const mp::real& x) {
  return boost::multiprecision::isfinite(x);
}

}  // namespace num
}  // namespace alr
