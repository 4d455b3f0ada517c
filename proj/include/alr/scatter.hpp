#pragma once

// Modal solutions of the radial transmission problems (no core and
// core-shell, 2D and 3D) and Newtonian-potential source coefficients.

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "alr/error.hpp"
#include "alr/numeric.hpp"
#include "alr/scaled_complex.hpp"
#include "alr/specfun.hpp"

namespace alr {

/// Radial plasmonic configuration. r_i = 0 means no core.
struct PlasmonConfig {
  int dim = 3;
  double r_i = 0.0;
  double r_e = 1.0;
  double eps_c = 1.0;
  double eps_s = 1.0;
  double delta = 0.0;
  double k = 1.0;

  bool has_core() const { return r_i > 0.0; }
};

inline void validate(const PlasmonConfig& c) {
  detail::require(c.dim == 2 || c.dim == 3, "config: dim must be 2 or 3");
  for (double v : {c.r_i, c.r_e, c.eps_c, c.eps_s, c.delta, c.k})
    if (!std::isfinite(v)) throw Error(ErrorKind::non_finite_argument, "config: non-finite parameter");
  detail::require(c.r_i >= 0.0 && c.r_i < c.r_e, "config: need 0 <= r_i < r_e");
  detail::require(c.k > 0.0, "config: k must be positive");
  detail::require(c.delta >= 0.0, "config: delta must be non-negative");
  detail::require(!c.has_core() || c.eps_c > 0.0, "config: eps_c must be positive when a core is present");
}

/// Modal coefficients beta_n of the Newtonian potential
///   3D: F = sum_n beta_n j_n(kr) Y_n(x^),  Y_n = sqrt((2n+1)/4pi) P_n(cos theta)
///   2D: F = sum_n beta_n J_n(kr) exp(i n theta)
/// Entries outside [n_min, n_max] (in |n| for 2D) are zero.
struct SourceCoefficients {
  int dim = 3;
  std::map<int, ScaledComplex> coeffs;
  double support_radius = 0.0;

  ScaledComplex beta(int n) const {
    auto it = coeffs.find(n);
    return it == coeffs.end() ? ScaledComplex{} : it->second;
  }
  int n_max() const {
    int m = 0;
    for (const auto& [n, b] : coeffs) m = std::max(m, std::abs(n));
    return m;
  }
  SourceCoefficients scaled_by(cdouble s) const {
    SourceCoefficients out = *this;
    for (auto& [n, b] : out.coeffs) b = b * s;
    return out;
  }
};

/// Source with a single nonzero coefficient beta_n = value.
inline SourceCoefficients singleton_source(int dim, int n, cdouble value, double support_radius) {
  SourceCoefficients s;
  s.dim = dim;
  s.coeffs[n] = ScaledComplex::from_complex(value);
  s.support_radius = support_radius;
  return s;
}

/// Per-mode coefficients. Region fields (3D shown; 2D uses J, H):
///   no core:    shell   a j(k1 r);          exterior b j(kr) + c h(kr), b = beta; g = denominator
///   core-shell: core    a j(kr/sqrt(eps_c)); shell b j(k1 r) + c h(k1 r);
///               exterior e j(kr) + d h(kr), e = beta; g = denominator
template <class Real = double>
struct BasicModeCoefficients {
  int n = 0;
  BasicScaledComplex<Real> a, b, c, d, e, g;
};

using ModeCoefficients = BasicModeCoefficients<double>;

struct ModalSolution {
  PlasmonConfig config;
  SourceCoefficients source;
  WaveNumbers waves;
  std::vector<ModeCoefficients> modes;  // ascending n
};

namespace detail {

/// j'h - jh' at t: -i/t^2 (3D), -2i/(pi t) (2D).
template <class Real>
BasicScaledComplex<Real> cross_wronskian(int dim, const complex_t<Real>& t) {
  using C = complex_t<Real>;
  const C minus_i(Real(0), Real(-1));
  if (dim == 3) return BasicScaledComplex<Real>::from_complex(minus_i / (t * t));
  return BasicScaledComplex<Real>::from_complex(Real(2) * minus_i / (num::pi<Real>() * t));
}

}  // namespace detail

/// b1 f'(r1) h(r2) - b2 h'(r2) f(r1) with f = j (3D) or J (2D).
template <class Complex, class Real = real_of_t<Complex>>
BasicScaledComplex<Real> phi2(int dim, int n, const Complex& b1, const Complex& b2, const Complex& r1,
                              const Complex& r2) {
  auto j = bessel_j(dim, n, r1);
  auto h = bessel_h(dim, n, r2);
  return j.derivative * h.value * b1 - h.derivative * j.value * b2;
}

/// Modal solve without a core for one mode with source coefficient beta.
template <class Real>
BasicModeCoefficients<Real> solve_mode_nocore(int dim, int n, const BasicWaveNumbers<Real>& w, const Real& r_e,
                                              const BasicScaledComplex<Real>& beta) {
  using S = BasicScaledComplex<Real>;
  using C = complex_t<Real>;
  BasicModeCoefficients<Real> m;
  m.n = n;
  m.b = beta;
  if (beta.is_zero()) return m;
  const C t(w.k * r_e, Real(0));
  const C t1 = w.k1 * r_e;
  auto je = bessel_j(dim, n, t);
  auto he = bessel_h(dim, n, t);
  auto j1 = bessel_j(dim, n, t1);
  S tau = S::from_complex(w.sqrt_shell);
  S denom = tau * j1.derivative * he.value - he.derivative * j1.value;
  if (denom.is_zero()) throw Error(ErrorKind::exact_modal_resonance, "exact modal resonance", n);
  m.g = denom;
  m.a = beta * (je.derivative * he.value - he.derivative * je.value) / denom;
  m.c = beta * (je.derivative * j1.value - tau * j1.derivative * je.value) / denom;
  return m;
}

/// a_n through the Wronskian-simplified numerator (used as a cross-check).
template <class Real>
BasicScaledComplex<Real> nocore_a_wronskian(int dim, const BasicWaveNumbers<Real>& w, const Real& r_e,
                                            const BasicModeCoefficients<Real>& m) {
  using C = complex_t<Real>;
  return m.b * detail::cross_wronskian<Real>(dim, C(w.k * r_e, Real(0))) / m.g;
}

/// Modal solve with a core for one mode with source coefficient beta.
template <class Real>
BasicModeCoefficients<Real> solve_mode_coreshell(int dim, int n, const BasicWaveNumbers<Real>& w, const Real& r_i,
                                                 const Real& r_e, const Real& eps_c,
                                                 const BasicScaledComplex<Real>& beta) {
  using S = BasicScaledComplex<Real>;
  using C = complex_t<Real>;
  using std::sqrt;
  BasicModeCoefficients<Real> m;
  m.n = n;
  m.e = beta;
  if (beta.is_zero()) return m;
  const Real sc = sqrt(eps_c);
  const C tc(w.k * r_i / sc, Real(0));
  const C t1i = w.k1 * r_i;
  const C t1e = w.k1 * r_e;
  const C te(w.k * r_e, Real(0));
  auto jc = bessel_j(dim, n, tc);
  auto j1i = bessel_j(dim, n, t1i);
  auto h1i = bessel_h(dim, n, t1i);
  auto j1e = bessel_j(dim, n, t1e);
  auto h1e = bessel_h(dim, n, t1e);
  auto je = bessel_j(dim, n, te);
  auto he = bessel_h(dim, n, te);
  S s_c = S::from_complex(C(sc, Real(0)));
  S tau = S::from_complex(w.sqrt_shell);

  // Core matching at r_i fixes the shell combination b : c = q : -p.
  S p = s_c * jc.derivative * j1i.value - tau * jc.value * j1i.derivative;
  S q = s_c * jc.derivative * h1i.value - tau * jc.value * h1i.derivative;
  // Shell profile v = q j(k1 r) - p h(k1 r) at r_e.
  S v = q * j1e.value - p * h1e.value;
  S dv = q * j1e.derivative - p * h1e.derivative;
  S g = tau * dv * he.value - v * he.derivative;
  if (g.is_zero()) throw Error(ErrorKind::exact_modal_resonance, "exact modal resonance", n);
  S s = beta * (je.derivative * he.value - je.value * he.derivative) / g;
  m.g = g;
  m.b = s * q;
  m.c = -(s * p);
  m.d = beta * (v * je.derivative - tau * dv * je.value) / g;
  // q j1i - p h1i = tau jc (j'h - jh')(k1 r_i)
  m.a = s * tau * detail::cross_wronskian<Real>(dim, t1i);
  return m;
}

/// Relative residual of the transmission conditions for one mode (max over
/// the equations, each normalized by its largest term).
inline double transmission_residual(const PlasmonConfig& cfg, const WaveNumbers& w, const ModeCoefficients& m) {
  const int dim = cfg.dim;
  const int n = m.n;
  const cdouble tau = w.sqrt_shell;
  auto rel = [](std::initializer_list<ScaledComplex> terms, ScaledComplex sum) {
    double lm = -INFINITY;
    for (const auto& t : terms) lm = std::max(lm, t.log_magnitude());
    if (sum.is_zero() || lm == -INFINITY) return 0.0;
    return std::exp(sum.log_magnitude() - lm);
  };
  const cdouble te(cfg.k * cfg.r_e, 0.0);
  auto je = bessel_j(dim, n, te);
  auto he = bessel_h(dim, n, te);
  auto j1e = bessel_j(dim, n, w.k1 * cfg.r_e);
  double worst = 0.0;
  if (!cfg.has_core()) {
    ScaledComplex l1 = m.a * j1e.value, r1 = m.b * je.value, r2 = m.c * he.value;
    worst = std::max(worst, rel({l1, r1, r2}, l1 - r1 - r2));
    ScaledComplex f1 = m.a * j1e.derivative * tau, g1 = m.b * je.derivative, g2 = m.c * he.derivative;
    worst = std::max(worst, rel({f1, g1, g2}, f1 - g1 - g2));
    return worst;
  }
  const double sc = std::sqrt(cfg.eps_c);
  auto jc = bessel_j(dim, n, cdouble(cfg.k * cfg.r_i / sc, 0.0));
  auto j1i = bessel_j(dim, n, w.k1 * cfg.r_i);
  auto h1i = bessel_h(dim, n, w.k1 * cfg.r_i);
  auto h1e = bessel_h(dim, n, w.k1 * cfg.r_e);
  {
    ScaledComplex x = m.a * jc.value, y = m.b * j1i.value, z = m.c * h1i.value;
    worst = std::max(worst, rel({x, y, z}, x - y - z));
    ScaledComplex fx = m.a * jc.derivative * cdouble(sc, 0.0), fy = m.b * j1i.derivative * tau,
                  fz = m.c * h1i.derivative * tau;
    worst = std::max(worst, rel({fx, fy, fz}, fx - fy - fz));
  }
  {
    ScaledComplex x = m.b * j1e.value, y = m.c * h1e.value, z = m.e * je.value, u = m.d * he.value;
    worst = std::max(worst, rel({x, y, z, u}, x + y - z - u));
    ScaledComplex fx = m.b * j1e.derivative * tau, fy = m.c * h1e.derivative * tau, fz = m.e * je.derivative,
                  fu = m.d * he.derivative;
    worst = std::max(worst, rel({fx, fy, fz, fu}, fx + fy - fz - fu));
  }
  return worst;
}

inline WaveNumbers config_wavenumbers(const PlasmonConfig& cfg) {
  return shell_wavenumbers(cfg.k, cfg.eps_s, cfg.delta);
}

inline void check_source(const PlasmonConfig& cfg, const SourceCoefficients& src) {
  detail::require(src.dim == cfg.dim, "source dimension does not match config");
  detail::require(src.support_radius > cfg.r_e, "source support radius must exceed r_e");
  if (cfg.dim == 3)
    for (const auto& [n, b] : src.coeffs) detail::require(n >= 0, "3D source indices must be non-negative");
}

inline ModalSolution solve_nocore(const PlasmonConfig& cfg, const SourceCoefficients& src) {
  validate(cfg);
  detail::require(!cfg.has_core(), "solve_nocore: r_i must be 0");
  check_source(cfg, src);
  ModalSolution sol{cfg, src, config_wavenumbers(cfg), {}};
  for (const auto& [n, beta] : src.coeffs)
    sol.modes.push_back(solve_mode_nocore<double>(cfg.dim, n, sol.waves, cfg.r_e, beta));
  return sol;
}

inline ModalSolution solve_coreshell(const PlasmonConfig& cfg, const SourceCoefficients& src) {
  validate(cfg);
  detail::require(cfg.has_core(), "solve_coreshell: r_i must be positive");
  check_source(cfg, src);
  ModalSolution sol{cfg, src, config_wavenumbers(cfg), {}};
  for (const auto& [n, beta] : src.coeffs)
    sol.modes.push_back(solve_mode_coreshell<double>(cfg.dim, n, sol.waves, cfg.r_i, cfg.r_e, cfg.eps_c, beta));
  return sol;
}

/// Dispatches on the presence of a core.
inline ModalSolution solve(const PlasmonConfig& cfg, const SourceCoefficients& src) {
  return cfg.has_core() ? solve_coreshell(cfg, src) : solve_nocore(cfg, src);
}

/// Coefficients of the potential of a point source of the given strength
/// placed on the polar axis (3D) or at angle 0 (2D), at distance
/// source_radius from the origin. Modes below n_min are zeroed.
inline SourceCoefficients point_source_coefficients(int dim, double k, double source_radius, cdouble strength,
                                                    int n_max, int n_min = 0) {
  detail::require(dim == 2 || dim == 3, "point source: dim must be 2 or 3");
  detail::require(source_radius > 0.0, "point source: source_radius must be positive");
  detail::require(k > 0.0, "point source: k must be positive");
  detail::require(n_max >= 1 && n_min >= 0 && n_min <= n_max, "point source: need 0 <= n_min <= n_max, n_max >= 1");
  SourceCoefficients s;
  s.dim = dim;
  s.support_radius = source_radius;
  const cdouble t(k * source_radius, 0.0);
  const double pi = num::pi<double>();
  if (dim == 3) {
    for (int n = n_min; n <= n_max; ++n) {
      auto h = spherical_h1(n, t).value;
      s.coeffs[n] = h * cdouble(0.0, -k * std::sqrt((2.0 * n + 1.0) / (4.0 * pi))) * strength;
    }
  } else {
    for (int n = n_min; n <= n_max; ++n) {
      auto h = cyl_h1(n, t).value * cdouble(0.0, -0.25) * strength;
      s.coeffs[n] = h;
      if (n != 0) s.coeffs[-n] = h;
    }
  }
  return s;
}

/// Large-order estimate of the shell energy of one mode per unit loss:
/// n r^(dim-2) |U(r)|^2 at the shell boundaries (times 2 pi in 2D). Mode 0 is
/// not counted.
inline double mode_energy_proxy(const PlasmonConfig& cfg, const WaveNumbers& w, const ModeCoefficients& m) {
  const int n = std::abs(m.n);
  if (n == 0) return 0.0;
  auto surface = [&](double r) {
    ScaledComplex u;
    if (!cfg.has_core()) {
      u = m.a * bessel_j(cfg.dim, n, w.k1 * r).value;
    } else {
      u = m.b * bessel_j(cfg.dim, n, w.k1 * r).value + m.c * bessel_h(cfg.dim, n, w.k1 * r).value;
    }
    if (u.is_zero()) return 0.0;
    return std::exp(2.0 * u.log_magnitude()) * n * std::pow(r, cfg.dim - 2);
  };
  double e = surface(cfg.r_e);
  if (cfg.has_core()) e += surface(cfg.r_i);
  return cfg.dim == 2 ? 2.0 * num::pi<double>() * e : e;
}

/// Smallest N such that modes with |n| > N carry less than tail_tol of the
/// estimated energy of the whole source window.
inline int truncation_order(const PlasmonConfig& cfg, const SourceCoefficients& src, double tail_tol) {
  detail::require(tail_tol > 0.0, "truncation_order: tail_tol must be positive");
  ModalSolution sol = solve(cfg, src);
  std::map<int, double> by_order;
  for (const auto& m : sol.modes) by_order[std::abs(m.n)] += mode_energy_proxy(cfg, sol.waves, m);
  double total = 0.0;
  for (const auto& [n, e] : by_order) total += e;
  if (total == 0.0) return 0;
  double tail = 0.0;
  int order = 0;
  for (auto it = by_order.rbegin(); it != by_order.rend(); ++it) {
    if (tail + it->second > tail_tol * total) {
      order = it->first;
      break;
    }
    tail += it->second;
  }
  return order;
}

}  // namespace alr
