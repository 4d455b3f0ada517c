#pragma once

// Complex-argument Bessel and Hankel functions of integer order (cylindrical
// and spherical), their leading-order large-order forms, and the shell
// wavenumber branch rule. All values are returned in scaled form so that
// orders of several hundred stay representable.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "alr/error.hpp"
#include "alr/numeric.hpp"
#include "alr/scaled_complex.hpp"

namespace alr {

/// Extracts the real scalar type of a complex type.
template <class Complex>
struct real_of;

template <class R>
struct real_of<std::complex<R>> {
  using type = R;
};

template <class Complex>
using real_of_t = typename real_of<Complex>::type;

template <class Real = double>
struct BesselValue {
  BasicScaledComplex<Real> value;
  BasicScaledComplex<Real> derivative;
};

namespace detail {

template <class Real>
void check_finite(const complex_t<Real>& z) {
  if (!num::is_finite_complex(z)) throw Error(ErrorKind::non_finite_argument, "non-finite argument");
}

template <class Real>
bool is_zero(const complex_t<Real>& z) {
  using std::imag;
  using std::real;
  return real(z) == Real(0) && imag(z) == Real(0);
}

/// Starting order for the downward recurrence; past max(n, |z|) the minimal
/// solution decays super-geometrically, so a margin growing like sqrt(order)
/// is enough for the working precision.
inline int miller_start(int n, double abs_z, int digits) {
  double m = std::max(static_cast<double>(n), abs_z);
  return static_cast<int>(m + std::sqrt(2.0 * digits * (m + 1.0)) + digits + 12.0);
}

template <class Real>
Real rescale_threshold() {
  return Real(1e100);
}

template <class Real>
BasicScaledComplex<Real> scaled(const complex_t<Real>& value, const Real& log_scale) {
  using std::abs;
  using std::log;
  if (is_zero<Real>(value)) return {};
  return BasicScaledComplex<Real>::from_log(log(abs(value)) + log_scale, value);
}

/// log((2n+1)!!) for n >= -1, with (-1)!! = 1.
template <class Real>
Real log_double_factorial_odd(int n) {
  using std::lgamma;
  using std::log;
  if (n <= 0) return Real(0);
  // (2n+1)!! = (2n+1)! / (2^n n!)
  return lgamma(Real(2 * n + 2)) - Real(n) * log(Real(2)) - lgamma(Real(n + 1));
}

template <class Real>
complex_t<Real> unit_phase(const Real& angle) {
  using std::cos;
  using std::sin;
  return complex_t<Real>(cos(angle), sin(angle));
}

/// Downward recurrence for the spherical Bessel function of the first kind.
/// Returns unnormalized f_n, f_{n+1} (scaled) and f_0, f_1 (scaled).
template <class Real>
struct SphericalMiller {
  BasicScaledComplex<Real> fn, fn1, f0, f1;
};

template <class Real>
SphericalMiller<Real> spherical_miller(int n, const complex_t<Real>& z) {
  using C = complex_t<Real>;
  using std::abs;
  using std::log;
  const int start = miller_start(n + 1, num::to_double(abs(z)), num::digits10<Real>());
  const C inv_z = C(Real(1), Real(0)) / z;
  const Real big = rescale_threshold<Real>();
  const Real log_big = log(big);
  C next(Real(0), Real(0));  // f_{k+1}
  C cur(Real(1), Real(0));   // f_k
  Real log_scale(0);
  SphericalMiller<Real> out;
  for (int k = start; k >= 1; --k) {
    if (k == n + 1) out.fn1 = scaled<Real>(cur, log_scale);
    if (k == n) out.fn = scaled<Real>(cur, log_scale);
    C prev = Real(2 * k + 1) * inv_z * cur - next;
    next = cur;
    cur = prev;
    if (abs(cur) > big) {
      cur /= big;
      next /= big;
      log_scale += log_big;
    }
  }
  if (n == 0) out.fn = scaled<Real>(cur, log_scale);
  out.f0 = scaled<Real>(cur, log_scale);
  out.f1 = scaled<Real>(next, log_scale);
  return out;
}

template <class Real>
struct CylindricalMiller {
  BasicScaledComplex<Real> jn, jn1;  // normalized J_n, J_{n+1}
  complex_t<Real> j0, j1, y0, y1;    // ordinary values (only when requested)
};

/// Downward recurrence for J_n normalized by the generating-function sum
/// J_0 + 2 sum_{m>=1} t^m J_m = exp(z (t - 1/t) / 2), t = +-i. The sign is
/// picked so that no term cancels against the total. When `want_y`, also
/// assembles Y_0, Y_1 from the Neumann series in even-order J's.
template <class Real>
CylindricalMiller<Real> cylindrical_miller(int n, const complex_t<Real>& z, bool want_y) {
  using C = complex_t<Real>;
  using std::abs;
  using std::exp;
  using std::imag;
  using std::log;
  using std::real;
  const int start = miller_start(n + 1, num::to_double(abs(z)), num::digits10<Real>());
  const C inv_z = C(Real(1), Real(0)) / z;
  const Real big = rescale_threshold<Real>();
  const Real log_big = log(big);
  const bool lower = imag(z) <= Real(0);
  const C t = lower ? C(Real(0), Real(1)) : C(Real(0), Real(-1));

  // t^m cycles with period 4.
  auto t_power = [&](int m) {
    static const int re[4] = {1, 0, -1, 0};
    static const int im[4] = {0, 1, 0, -1};
    int r = m % 4;
    return C(Real(re[r]), Real(lower ? im[r] : -im[r]));
  };
  // Coefficient of F_m in sum_{k>=1} (-1)^k (F_{2k-1} - F_{2k+1}) / k (m odd).
  auto odd_weight = [](int m) {
    Real w(0);
    int k = (m + 1) / 2;
    w += Real(k % 2 == 0 ? 1 : -1) / Real(k);
    if (m >= 3) {
      int k2 = (m - 1) / 2;
      w -= Real(k2 % 2 == 0 ? 1 : -1) / Real(k2);
    }
    return w;
  };

  C next(Real(0), Real(0));
  C cur(Real(1), Real(0));
  Real log_scale(0);
  C norm(Real(0), Real(0));
  C even_sum(Real(0), Real(0));  // sum_{k>=1} (-1)^k F_{2k} / k
  C odd_sum(Real(0), Real(0));   // sum_{k>=1} (-1)^k (F_{2k-1} - F_{2k+1}) / k
  CylindricalMiller<Real> out;

  auto accumulate = [&](int m, const C& f) {
    if (m == 0) {
      norm += f;
      return;
    }
    norm += Real(2) * t_power(m) * f;
    if (!want_y) return;
    if (m % 2 == 0) {
      int k = m / 2;
      even_sum += (Real(k % 2 == 0 ? 1 : -1) / Real(k)) * f;
    } else {
      odd_sum += odd_weight(m) * f;
    }
  };

  for (int k = start; k >= 1; --k) {
    if (k == n + 1) out.jn1 = scaled<Real>(cur, log_scale);
    if (k == n) out.jn = scaled<Real>(cur, log_scale);
    accumulate(k, cur);
    C prev = Real(2 * k) * inv_z * cur - next;
    next = cur;
    cur = prev;
    if (abs(cur) > big) {
      cur /= big;
      next /= big;
      norm /= big;
      even_sum /= big;
      odd_sum /= big;
      log_scale += log_big;
    }
  }
  if (n == 0) out.jn = scaled<Real>(cur, log_scale);
  accumulate(0, cur);

  // norm * exp(log_scale) equals exp(z (t - 1/t)/2) * C for the unknown
  // normalization C; exp(z(t - 1/t)/2) = exp(+-iz).
  const C iz = lower ? C(Real(0), Real(1)) * z : C(Real(0), Real(-1)) * z;
  BasicScaledComplex<Real> generating = BasicScaledComplex<Real>::from_log(real(iz), unit_phase<Real>(imag(iz)));
  BasicScaledComplex<Real> normalization = scaled<Real>(norm, log_scale) / generating;
  out.jn = out.jn / normalization;
  out.jn1 = out.jn1 / normalization;

  if (want_y) {
    // Everything below is at the common scale log_scale; divide by the
    // normalization expressed at that scale.
    const C scale_inv = (generating / BasicScaledComplex<Real>::from_complex(norm)).to_complex();
    const C j0 = cur * scale_inv;
    const C j1 = next * scale_inv;
    const C es = even_sum * scale_inv;
    const C os = odd_sum * scale_inv;
    const Real two_over_pi = Real(2) / num::pi<Real>();
    using std::log;
    const C log_term = log(z / Real(2)) + num::euler_gamma<Real>();
    out.j0 = j0;
    out.j1 = j1;
    out.y0 = two_over_pi * log_term * j0 - Real(2) * two_over_pi * es;
    const C dy0 = two_over_pi * (j0 * inv_z - log_term * j1) - two_over_pi * os;
    out.y1 = -dy0;
  }
  return out;
}

}  // namespace detail

/// Spherical Bessel function j_n(z) and its derivative.
template <class Complex, class Real = real_of_t<Complex>>
BesselValue<Real> spherical_j(int n, const Complex& z) {
  using S = BasicScaledComplex<Real>;
  using C = complex_t<Real>;
  using std::abs;
  using std::cos;
  using std::sin;
  detail::require(n >= 0, "spherical_j: order must be non-negative");
  detail::check_finite<Real>(z);
  BesselValue<Real> out;
  if (detail::is_zero<Real>(z)) {
    if (n == 0) out.value = S::one();
    if (n == 1) out.derivative = S::from_complex(C(Real(1) / Real(3), Real(0)));
    return out;
  }
  auto m = detail::spherical_miller<Real>(n, z);
  const C j0 = sin(z) / z;
  const C j1 = sin(z) / (z * z) - cos(z) / z;
  S scale = abs(j0) >= abs(j1) ? S::from_complex(j0) / m.f0 : S::from_complex(j1) / m.f1;
  S jn = m.fn * scale;
  S jn1 = m.fn1 * scale;
  out.value = n == 0 ? S::from_complex(j0) : jn;
  out.derivative = jn * S::from_complex(C(Real(n), Real(0)) / z) - jn1;
  return out;
}

/// Spherical Hankel function of the first kind h_n^(1)(z) and its derivative.
template <class Complex, class Real = real_of_t<Complex>>
BesselValue<Real> spherical_h1(int n, const Complex& z) {
  using S = BasicScaledComplex<Real>;
  using C = complex_t<Real>;
  using std::abs;
  using std::imag;
  using std::log;
  using std::real;
  detail::require(n >= 0, "spherical_h1: order must be non-negative");
  detail::check_finite<Real>(z);
  if (detail::is_zero<Real>(z)) throw Error(ErrorKind::hankel_singular, "Hankel singular at origin");
  const C i = num::i_unit<Real>();
  const C inv_z = C(Real(1), Real(0)) / z;
  // exp(iz) carried as a scale: |exp(iz)| = exp(-Im z).
  Real log_scale = -imag(z);
  const C e = detail::unit_phase<Real>(real(z));
  C prev = -i * inv_z * e;                    // h_0
  C cur = -(z + i) * inv_z * inv_z * e;       // h_1
  BesselValue<Real> out;
  if (n == 0) {
    out.value = detail::scaled<Real>(prev, log_scale);
    out.derivative = -detail::scaled<Real>(cur, log_scale);
    return out;
  }
  const Real big = detail::rescale_threshold<Real>();
  const Real log_big = log(big);
  for (int k = 1; k < n; ++k) {
    C next = Real(2 * k + 1) * inv_z * cur - prev;
    prev = cur;
    cur = next;
    if (abs(cur) > big) {
      cur /= big;
      prev /= big;
      log_scale += log_big;
    }
  }
  out.value = detail::scaled<Real>(cur, log_scale);
  out.derivative = detail::scaled<Real>(prev - Real(n + 1) * inv_z * cur, log_scale);
  return out;
}

/// Cylindrical Bessel function J_n(z); negative orders use J_{-n} = J_n.
template <class Complex, class Real = real_of_t<Complex>>
BesselValue<Real> cyl_j(int n, const Complex& z) {
  using S = BasicScaledComplex<Real>;
  using C = complex_t<Real>;
  detail::check_finite<Real>(z);
  n = std::abs(n);
  BesselValue<Real> out;
  if (detail::is_zero<Real>(z)) {
    if (n == 0) out.value = S::one();
    if (n == 1) out.derivative = S::from_complex(C(Real(1) / Real(2), Real(0)));
    return out;
  }
  auto m = detail::cylindrical_miller<Real>(n, z, false);
  out.value = m.jn;
  out.derivative = m.jn * S::from_complex(C(Real(n), Real(0)) / z) - m.jn1;
  return out;
}

/// Cylindrical Hankel function of the first kind H_n^(1)(z); negative
/// orders use H_{-n} = H_n.
template <class Complex, class Real = real_of_t<Complex>>
BesselValue<Real> cyl_h1(int n, const Complex& z) {
  using C = complex_t<Real>;
  using std::abs;
  using std::log;
  detail::check_finite<Real>(z);
  n = std::abs(n);
  if (detail::is_zero<Real>(z)) throw Error(ErrorKind::hankel_singular, "Hankel singular at origin");
  const C i = num::i_unit<Real>();
  auto m = detail::cylindrical_miller<Real>(0, z, true);
  const C inv_z = C(Real(1), Real(0)) / z;
  C prev = m.j0 + i * m.y0;  // H_0
  C cur = m.j1 + i * m.y1;   // H_1
  BesselValue<Real> out;
  Real log_scale(0);
  if (n == 0) {
    out.value = detail::scaled<Real>(prev, log_scale);
    out.derivative = -detail::scaled<Real>(cur, log_scale);
    return out;
  }
  const Real big = detail::rescale_threshold<Real>();
  const Real log_big = log(big);
  for (int k = 1; k < n; ++k) {
    C next = Real(2 * k) * inv_z * cur - prev;
    prev = cur;
    cur = next;
    if (abs(cur) > big) {
      cur /= big;
      prev /= big;
      log_scale += log_big;
    }
  }
  out.value = detail::scaled<Real>(cur, log_scale);
  out.derivative = detail::scaled<Real>(prev - Real(n) * inv_z * cur, log_scale);
  return out;
}

/// Leading-order large-order forms and their relative corrections:
/// value = hat * (1 + check), with check' = d/dt check.
template <class Real = double>
struct AsymptoticParts {
  BasicScaledComplex<Real> hat_j, hat_h;
  complex_t<Real> check_j, check_h;
  complex_t<Real> dcheck_j, dcheck_h;
};

/// Leading-order factors only (no Bessel evaluation).
template <class Real = double>
struct HatFactors {
  BasicScaledComplex<Real> hat_j, hat_h;
  complex_t<Real> log_deriv_j, log_deriv_h;  // hat'/hat
};

template <class Complex, class Real = real_of_t<Complex>>
HatFactors<Real> hat_factors(int dim, int n, const Complex& t) {
  using S = BasicScaledComplex<Real>;
  using C = complex_t<Real>;
  using std::abs;
  using std::arg;
  using std::lgamma;
  using std::log;
  detail::require(dim == 2 || dim == 3, "dimension must be 2 or 3");
  detail::check_finite<Real>(t);
  if (detail::is_zero<Real>(t)) throw Error(ErrorKind::invalid_argument, "leading-order forms need t != 0");
  if (dim == 2) n = std::abs(n);
  detail::require(n >= 0, "order must be non-negative");
  detail::require(dim == 3 || n >= 1, "cylindrical leading-order Hankel form needs n >= 1");
  const Real log_t = log(abs(t));
  const Real theta = arg(t);
  const C minus_i(Real(0), Real(-1));
  HatFactors<Real> out;
  if (dim == 3) {
    out.hat_j = S::from_log(Real(n) * log_t - detail::log_double_factorial_odd<Real>(n),
                            detail::unit_phase<Real>(Real(n) * theta));
    out.hat_h = S::from_log(detail::log_double_factorial_odd<Real>(n - 1) - Real(n + 1) * log_t,
                            minus_i * detail::unit_phase<Real>(-Real(n + 1) * theta));
    out.log_deriv_j = C(Real(n), Real(0)) / t;
    out.log_deriv_h = C(-Real(n + 1), Real(0)) / t;
  } else {
    const Real log2 = log(Real(2));
    out.hat_j = S::from_log(Real(n) * log_t - Real(n) * log2 - lgamma(Real(n + 1)),
                            detail::unit_phase<Real>(Real(n) * theta));
    out.hat_h = S::from_log(Real(n) * log2 + lgamma(Real(n)) - log(num::pi<Real>()) - Real(n) * log_t,
                            minus_i * detail::unit_phase<Real>(-Real(n) * theta));
    out.log_deriv_j = C(Real(n), Real(0)) / t;
    out.log_deriv_h = C(-Real(n), Real(0)) / t;
  }
  return out;
}

/// First-kind Bessel / Hankel pair for the given dimension (spherical in 3D,
/// cylindrical in 2D).
template <class Complex, class Real = real_of_t<Complex>>
BesselValue<Real> bessel_j(int dim, int n, const Complex& z) {
  return dim == 3 ? spherical_j(n, z) : cyl_j(n, z);
}

template <class Complex, class Real = real_of_t<Complex>>
BesselValue<Real> bessel_h(int dim, int n, const Complex& z) {
  return dim == 3 ? spherical_h1(n, z) : cyl_h1(n, z);
}

template <class Complex, class Real = real_of_t<Complex>>
AsymptoticParts<Real> asymptotic_parts(int dim, int n, const Complex& t) {
  using C = complex_t<Real>;
  auto hats = hat_factors(dim, n, t);
  auto j = bessel_j(dim, n, t);
  auto h = bessel_h(dim, n, t);
  const C one(Real(1), Real(0));
  AsymptoticParts<Real> out;
  out.hat_j = hats.hat_j;
  out.hat_h = hats.hat_h;
  const C rj = (j.value / hats.hat_j).to_complex();
  const C rh = (h.value / hats.hat_h).to_complex();
  out.check_j = rj - one;
  out.check_h = rh - one;
  out.dcheck_j = (j.derivative / hats.hat_j).to_complex() - rj * hats.log_deriv_j;
  out.dcheck_h = (h.derivative / hats.hat_h).to_complex() - rh * hats.log_deriv_h;
  return out;
}

/// Background and shell wavenumbers: sqrt_shell = sqrt(eps_s + i delta)
/// (principal branch) and k1 = k / sqrt_shell.
template <class Real = double>
struct BasicWaveNumbers {
  Real k;
  complex_t<Real> k1;
  complex_t<Real> sqrt_shell;
};

using WaveNumbers = BasicWaveNumbers<double>;

template <class Real>
BasicWaveNumbers<Real> shell_wavenumbers(const Real& k, const Real& eps_s, const Real& delta) {
  using C = complex_t<Real>;
  using std::imag;
  using std::real;
  using std::sqrt;
  detail::require(k > Real(0), "shell_wavenumbers: k must be positive");
  detail::require(delta >= Real(0), "shell_wavenumbers: delta must be non-negative");
  detail::require(!(eps_s == Real(0) && delta == Real(0)), "shell_wavenumbers: eps_s + i delta must be nonzero");
  BasicWaveNumbers<Real> out;
  out.k = k;
  out.sqrt_shell = sqrt(C(eps_s, delta));
  out.k1 = C(k, Real(0)) / out.sqrt_shell;
  const bool ok = delta > Real(0) ? (real(out.k1) > Real(0) && imag(out.k1) < Real(0))
                                  : (real(out.k1) >= Real(0) && imag(out.k1) <= Real(0));
  if (!ok) throw Error(ErrorKind::branch_violation, "branch violation");
  return out;
}

inline WaveNumbers shell_wavenumbers(double k, double eps_s, double delta) {
  return shell_wavenumbers<double>(k, eps_s, delta);
}

}  // namespace alr
