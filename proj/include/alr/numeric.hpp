#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

namespace alr {

/// Maps a real scalar type to its complex counterpart. Specialized for
/// Boost.Multiprecision types in alr/multiprecision.hpp.
template <class Real>
struct complex_of {
  using type = std::complex<Real>;
};

template <class Real>
using complex_t = typename complex_of<Real>::type;

using cdouble = std::complex<double>;

namespace num {

template <class Real>
Real pi() {
  using std::acos;
  static const Real value = acos(Real(-1));
  return value;
}

template <class Real>
Real euler_gamma() {
  if constexpr (std::is_same_v<Real, double>) {
    return 0.57721566490153286060651209008240243;
  } else {
    static const Real value(
        "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467");
    return value;
  }
}

template <class Real>
bool is_finite(const Real& x) {
  using std::isfinite;
  return isfinite(x);
}

template <class Complex>
bool is_finite_complex(const Complex& z) {
  using std::imag;
  using std::real;
  return is_finite(real(z)) && is_finite(imag(z));
}

/// Unit imaginary of complex_t<Real>.
template <class Real>
complex_t<Real> i_unit() {
  return complex_t<Real>(Real(0), Real(1));
}

/// Decimal digits carried by the real type.
template <class Real>
int digits10() {
  return std::numeric_limits<Real>::digits10;
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <class Complex>
cdouble to_cdouble(const Complex& z) {
  using std::imag;
  using std::real;
  return {static_cast<double>(real(z)), static_cast<double>(imag(z))};
}

}  // namespace num
}  // namespace alr
