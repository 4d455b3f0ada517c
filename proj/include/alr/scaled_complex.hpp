#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include "alr/numeric.hpp"

namespace alr {

/// Complex number stored as exp(log_magnitude) * phase with |phase| = 1.
///
/// Bessel and Hankel values at orders of a few hundred range far outside
/// double precision; products and ratios of them stay representable here.
/// The exact zero is log_magnitude = -inf with phase = 0.
template <class Real = double>
class BasicScaledComplex {
 public:
  using real_type = Real;
  using complex_type = complex_t<Real>;

  BasicScaledComplex() : log_magnitude_(-std::numeric_limits<Real>::infinity()), phase_(Real(0), Real(0)) {}

  static BasicScaledComplex from_complex(const complex_type& z) {
    using std::abs;
    using std::log;
    BasicScaledComplex out;
    Real m = abs(z);
    if (m == Real(0)) return out;
    out.log_magnitude_ = log(m);
    out.phase_ = z / m;
    return out;
  }

  /// Build from a log-magnitude and an arbitrary nonzero direction; the
  /// direction is normalized.
  static BasicScaledComplex from_log(const Real& log_magnitude, const complex_type& direction) {
    using std::abs;
    BasicScaledComplex out;
    Real m = abs(direction);
    if (m == Real(0) || log_magnitude == -std::numeric_limits<Real>::infinity()) return out;
    out.log_magnitude_ = log_magnitude;
    out.phase_ = direction / m;
    return out;
  }

  static BasicScaledComplex zero() { return {}; }
  static BasicScaledComplex one() { return from_complex(complex_type(Real(1), Real(0))); }

  const Real& log_magnitude() const { return log_magnitude_; }
  const complex_type& phase_factor() const { return phase_; }
  bool is_zero() const { return phase_ == complex_type(Real(0), Real(0)); }

  /// Ordinary complex value; overflows to inf or underflows to 0 when out of range.
  complex_type to_complex() const {
    using std::exp;
    if (is_zero()) return complex_type(Real(0), Real(0));
    return exp(log_magnitude_) * phase_;
  }

  cdouble to_cdouble() const { return num::to_cdouble(to_complex()); }

  /// Lossy conversion to double-precision scaled form.
  BasicScaledComplex<double> to_double() const {
    if (is_zero()) return {};
    return BasicScaledComplex<double>::from_log(static_cast<double>(log_magnitude_), num::to_cdouble(phase_));
  }

  Real abs() const {
    using std::exp;
    return is_zero() ? Real(0) : exp(log_magnitude_);
  }

  BasicScaledComplex conj() const {
    using std::conj;
    BasicScaledComplex out = *this;
    out.phase_ = conj(phase_);
    return out;
  }

  BasicScaledComplex operator-() const {
    BasicScaledComplex out = *this;
    out.phase_ = -phase_;
    return out;
  }

  friend BasicScaledComplex operator*(const BasicScaledComplex& a, const BasicScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_log(a.log_magnitude_ + b.log_magnitude_, a.phase_ * b.phase_);
  }

  friend BasicScaledComplex operator/(const BasicScaledComplex& a, const BasicScaledComplex& b) {
    using std::conj;
    if (b.is_zero()) {
      BasicScaledComplex out;
      out.log_magnitude_ = std::numeric_limits<Real>::infinity();
      out.phase_ = complex_type(std::numeric_limits<Real>::quiet_NaN(), Real(0));
      return out;
    }
    if (a.is_zero()) return {};
    return from_log(a.log_magnitude_ - b.log_magnitude_, a.phase_ * conj(b.phase_));
  }

  friend BasicScaledComplex operator+(const BasicScaledComplex& a, const BasicScaledComplex& b) {
    using std::abs;
    using std::exp;
    using std::log;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const BasicScaledComplex& big = a.log_magnitude_ >= b.log_magnitude_ ? a : b;
    const BasicScaledComplex& small = a.log_magnitude_ >= b.log_magnitude_ ? b : a;
    complex_type s = big.phase_ + small.phase_ * exp(small.log_magnitude_ - big.log_magnitude_);
    Real m = abs(s);
    if (m == Real(0)) return {};
    return from_log(big.log_magnitude_ + log(m), s);
  }

  friend BasicScaledComplex operator-(const BasicScaledComplex& a, const BasicScaledComplex& b) { return a + (-b); }

  BasicScaledComplex& operator+=(const BasicScaledComplex& o) { return *this = *this + o; }
  BasicScaledComplex& operator-=(const BasicScaledComplex& o) { return *this = *this - o; }
  BasicScaledComplex& operator*=(const BasicScaledComplex& o) { return *this = *this * o; }
  BasicScaledComplex& operator/=(const BasicScaledComplex& o) { return *this = *this / o; }

  friend BasicScaledComplex operator*(const BasicScaledComplex& a, const complex_type& z) { return a * from_complex(z); }
  friend BasicScaledComplex operator*(const complex_type& z, const BasicScaledComplex& a) { return a * from_complex(z); }
  friend BasicScaledComplex operator/(const BasicScaledComplex& a, const complex_type& z) { return a / from_complex(z); }

  friend std::ostream& operator<<(std::ostream& os, const BasicScaledComplex& v) {
    return os << "exp(" << v.log_magnitude_ << ")*" << v.phase_;
  }

 private:
  Real log_magnitude_;
  complex_type phase_;
};

using ScaledComplex = BasicScaledComplex<double>;

}  // namespace alr
