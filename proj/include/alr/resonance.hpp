#pragma once

// Resonance conditions, plasmon-parameter root finding and the critical
// radius of the core-shell configurations.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "alr/error.hpp"
#include "alr/numeric.hpp"
#include "alr/scaled_complex.hpp"
#include "alr/scatter.hpp"
#include "alr/specfun.hpp"

namespace alr {

inline constexpr int asymptotic_threshold = 20;

/// sqrt(eps_s + i delta) f'(k1 r_e) h(k r_e) - h'(k r_e) f(k1 r_e).
template <class Real>
BasicScaledComplex<Real> denominator_residual_scaled(int dim, int n, const Real& eps_s, const Real& delta,
                                                     const Real& k, const Real& r_e) {
  using C = complex_t<Real>;
  auto w = shell_wavenumbers(k, eps_s, delta);
  return phi2(dim, n, w.sqrt_shell, C(Real(1), Real(0)), C(w.k1 * r_e), C(k * r_e, Real(0)));
}

inline cdouble denominator_residual(int dim, int n, double eps_s, double delta, double k, double r_e) {
  detail::require(dim == 2 || dim == 3, "dim must be 2 or 3");
  detail::require(r_e > 0.0, "r_e must be positive");
  return denominator_residual_scaled<double>(dim, n, eps_s, delta, k, r_e).to_complex();
}

/// Leading-order-factored part of phi2:
/// hat_f(r1) hat_h(r2) (b1 check_f'(r1)(1 + check_h(r2)) - b2 check_h'(r2)(1 + check_f(r1))).
template <class Complex, class Real = real_of_t<Complex>>
BasicScaledComplex<Real> phi1(int dim, int n, const Complex& b1, const Complex& b2, const Complex& r1,
                              const Complex& r2) {
  using C = complex_t<Real>;
  if (std::abs(n) < asymptotic_threshold)
    throw Error(ErrorKind::below_asymptotic_regime, "below asymptotic regime: need n >= 20", n);
  auto p1 = asymptotic_parts(dim, n, r1);
  auto p2 = asymptotic_parts(dim, n, r2);
  const C one(Real(1), Real(0));
  const C bracket = b1 * p1.dcheck_j * (one + p2.check_h) - b2 * p2.dcheck_h * (one + p1.check_j);
  return p1.hat_j * p2.hat_h * BasicScaledComplex<Real>::from_complex(bracket);
}

/// Raw condition value and its normalization by the leading-order prefactor.
struct ConditionValue {
  cdouble normalized;
  ScaledComplex raw;
};

template <class Real>
struct BasicConditionValue {
  complex_t<Real> normalized;
  BasicScaledComplex<Real> raw;
};

template <class Real>
BasicConditionValue<Real> condition_lhs_nocore_t(int dim, int n0, const Real& k, const Real& r_e, const Real& eps_s,
                                                 const Real& delta) {
  using C = complex_t<Real>;
  auto w = shell_wavenumbers(k, eps_s, delta);
  const C t1 = w.k1 * r_e;
  const C t(k * r_e, Real(0));
  BasicConditionValue<Real> out;
  out.raw = phi1(dim, n0, w.sqrt_shell, C(Real(1), Real(0)), t1, t);
  auto scale = hat_factors(dim, n0, t1).hat_j * hat_factors(dim, n0, t).hat_h;
  out.normalized = BasicScaledComplex<Real>::from_log(out.raw.log_magnitude() - scale.log_magnitude(),
                                                      out.raw.phase_factor())
                       .to_complex();
  if (out.raw.is_zero()) out.normalized = C(Real(0), Real(0));
  return out;
}

inline ConditionValue condition_lhs_nocore(int dim, int n0, double k, double r_e, double eps_s, double delta) {
  detail::require(dim == 2 || dim == 3, "dim must be 2 or 3");
  auto v = condition_lhs_nocore_t<double>(dim, n0, k, r_e, eps_s, delta);
  return {v.normalized, v.raw};
}

/// Core-shell condition
///   phi1(c) phi2(e) + phi1(e) (phi2(c) - phi1(c))
/// with (c) = (n0, sqrt(eps_c), tau, k r_i / sqrt(eps_c), k1 r_i) and
/// (e) = (n0, tau, 1, k1 r_e, k r_e).
template <class Real>
BasicConditionValue<Real> condition_lhs_coreshell_t(int dim, int n0, const Real& k, const Real& r_i, const Real& r_e,
                                                    const Real& eps_c, const Real& eps_s, const Real& delta) {
  using C = complex_t<Real>;
  using std::sqrt;
  if (!(r_i > Real(0))) throw Error(ErrorKind::no_core, "no core");
  auto w = shell_wavenumbers(k, eps_s, delta);
  const Real sc = sqrt(eps_c);
  const C one(Real(1), Real(0));
  const C csc(sc, Real(0));
  const C tc(k * r_i / sc, Real(0));
  const C t1i = w.k1 * r_i;
  const C t1e = w.k1 * r_e;
  const C te(k * r_e, Real(0));
  auto p1c = phi1(dim, n0, csc, w.sqrt_shell, tc, t1i);
  auto p2c = phi2(dim, n0, csc, w.sqrt_shell, tc, t1i);
  auto p1e = phi1(dim, n0, w.sqrt_shell, one, t1e, te);
  auto p2e = phi2(dim, n0, w.sqrt_shell, one, t1e, te);
  BasicConditionValue<Real> out;
  out.raw = p1c * p2e + p1e * (p2c - p1c);
  auto scale = hat_factors(dim, n0, tc).hat_j * hat_factors(dim, n0, t1i).hat_h * hat_factors(dim, n0, t1e).hat_j *
               hat_factors(dim, n0, te).hat_h;
  out.normalized = out.raw.is_zero() ? C(Real(0), Real(0))
                                     : BasicScaledComplex<Real>::from_log(
                                           out.raw.log_magnitude() - scale.log_magnitude(), out.raw.phase_factor())
                                           .to_complex();
  return out;
}

inline ConditionValue condition_lhs_coreshell(int n0, const PlasmonConfig& cfg) {
  validate(cfg);
  if (!cfg.has_core()) throw Error(ErrorKind::no_core, "no core");
  auto v = condition_lhs_coreshell_t<double>(cfg.dim, n0, cfg.k, cfg.r_i, cfg.r_e, cfg.eps_c, cfg.eps_s, cfg.delta);
  return {v.normalized, v.raw};
}

inline ConditionValue condition_lhs_coreshell(int dim, int n0, const PlasmonConfig& cfg) {
  PlasmonConfig c = cfg;
  c.dim = dim;
  return condition_lhs_coreshell(n0, c);
}

struct ResonantPair {
  double eps_s = 0.0;
  double delta = 0.0;
  double residual_norm = 0.0;
  int mode = 0;
  int iterations = 0;
};

struct RootOptions {
  int max_iter = 200;
  double tolerance = 1e-10;
};

/// Default starting point (eps_s, delta) for the plasmon-parameter search.
inline std::pair<double, double> default_initial_guess(int dim, int n0) {
  if (dim == 3) {
    if (n0 <= 4) return {-1.3, 0.5};
    return {-1.0 - 1.0 / n0, std::pow(0.5, n0)};
  }
  return {-1.0, std::pow(0.5, n0)};
}

/// Complex-secant search for eps = eps_s + i delta with vanishing denominator.
/// The unknown is tau = sqrt(eps), in which the residual is entire.
inline ResonantPair find_resonant_pair(int dim, int n0, double k, double r_e,
                                       std::optional<std::pair<double, double>> initial = std::nullopt,
                                       RootOptions opt = {}) {
  detail::require(dim == 2 || dim == 3, "dim must be 2 or 3");
  detail::require(n0 >= 0 && k > 0.0 && r_e > 0.0, "find_resonant_pair: need n0 >= 0, k > 0, r_e > 0");
  auto [e0, d0] = initial.value_or(default_initial_guess(dim, n0));
  const cdouble one(1.0, 0.0);
  const cdouble t(k * r_e, 0.0);
  auto f = [&](cdouble tau) {
    return phi2(dim, n0, tau, one, cdouble(k * r_e) / tau, t).to_complex();
  };
  cdouble x0 = std::sqrt(cdouble(e0, d0));
  cdouble x1 = x0 * cdouble(1.0, 1e-3) + 1e-3;
  cdouble f0 = f(x0), f1 = f(x1);
  if (std::abs(f0) < std::abs(f1)) {
    std::swap(x0, x1);
    std::swap(f0, f1);
  }
  int it = 0;
  for (; it < opt.max_iter && !(std::abs(f1) < opt.tolerance); ++it) {
    cdouble df = f1 - f0;
    if (df == 0.0) break;
    cdouble step = -f1 * (x1 - x0) / df;
    cdouble x2 = x1 + step;
    cdouble f2 = f(x2);
    for (int damp = 0; damp < 30 && !(std::abs(f2) < std::abs(f1)); ++damp) {
      step *= 0.5;
      x2 = x1 + step;
      f2 = f(x2);
    }
    if (!num::is_finite_complex(f2)) break;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
  }
  if (!(std::abs(f1) < opt.tolerance)) throw Error(ErrorKind::no_root_found, "no root found", n0);
  cdouble eps = x1 * x1;
  ResonantPair out;
  out.eps_s = eps.real();
  out.delta = eps.imag();
  out.mode = n0;
  out.iterations = it;
  if (out.delta < 0.0) throw Error(ErrorKind::unphysical_root, "unphysical root", n0);
  out.residual_norm = std::abs(denominator_residual(dim, n0, out.eps_s, out.delta, k, r_e));
  return out;
}

/// r_* = sqrt(r_e^3 / r_i).
inline double critical_radius(double r_i, double r_e) {
  if (r_i == 0.0) throw Error(ErrorKind::no_core, "no core");
  detail::require(r_i > 0.0 && r_e >= r_i, "critical_radius: need 0 < r_i <= r_e");
  return std::sqrt(r_e * r_e * r_e / r_i);
}

}  // namespace alr
