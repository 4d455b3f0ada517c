#pragma once

// Spectral quantities of the single-layer and Neumann-Poincare operators on a
// sphere of radius R, and the layer-potential solve of the no-core problem.
//
// Conventions: G^k(x, y) = -exp(ik|x-y|) / (4 pi |x-y|), S^k[Y_m] = chi Y_m on
// the sphere, (K^k)^*[Y_m] = lambda Y_m, orthonormal zonal Y_m.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "alr/error.hpp"
#include "alr/fields.hpp"
#include "alr/quadrature.hpp"
#include "alr/scatter.hpp"
#include "alr/specfun.hpp"

namespace alr {

struct NpEigenpair {
  int m = 0;
  double k = 0.0;
  double R = 0.0;
  cdouble lambda;        // 1/2 - i k^2 R^2 j'_m h_m
  cdouble lambda_outer;  // -1/2 - i k^2 R^2 j_m h'_m
  cdouble chi;           // -i k R^2 h_m j_m
  cdouble funk_hecke;    // 2kR (h j' + j h') + 2 j h
  ScaledComplex gamma;   // -(2 + ikR E) R / (2 (2kR j' + j))
  ScaledComplex alpha;   // (2 - ikR E) R / (2 (2kR h' + h))
};

struct AssumptionReport {
  std::vector<bool> holds;                  // entry n: j_n(kR) != j_{n+2}(kR)
  std::vector<cdouble> gamma_denominator;   // 2kR j_n'(kR) + j_n(kR), n = 0..n_max
};

namespace detail {

constexpr double assumption_rel_tol = 1e-12;

inline bool distinct(const ScaledComplex& a, const ScaledComplex& b) {
  const double scale = std::max(a.log_magnitude(), b.log_magnitude());
  if (scale == -std::numeric_limits<double>::infinity()) return false;
  const ScaledComplex diff = a - b;
  if (diff.is_zero()) return false;
  // Below the double floor the comparison is made in scaled form.
  return diff.log_magnitude() - scale > std::log(assumption_rel_tol);
}

/// 2t f'(t) + f(t) for f = j_n at complex t, in scaled form.
inline ScaledComplex gamma_denominator(int n, cdouble t) {
  auto j = spherical_j(n, t);
  return j.derivative * (2.0 * t) + j.value;
}

/// Second-kind spherical Bessel y_n(t) = Im h_n(t) for real t, in scaled form.
inline ScaledComplex spherical_y(int n, double t) {
  return (spherical_h1(n, cdouble(t)).value - spherical_j(n, cdouble(t)).value) * cdouble(0.0, -1.0);
}

/// 2t (h j' + j h') + 2 j h for m >= 1, rewritten with the three-term
/// recurrences as 2t j_m (j_{m-1} - j_{m+1}) + 2it (j_m y_{m-1} - j_{m+1} y_m).
/// The direct form cancels its O(1/t^2) leading terms down to O(1/m^3).
inline cdouble funk_hecke_closed(int m, double t) {
  const cdouble z(t, 0.0);
  const ScaledComplex jm = spherical_j(m, z).value;
  const ScaledComplex jl = spherical_j(m - 1, z).value;
  const ScaledComplex ju = spherical_j(m + 1, z).value;
  const ScaledComplex re = jm * (jl - ju) * cdouble(2.0 * t);
  const ScaledComplex im = (jm * spherical_y(m - 1, t) - ju * spherical_y(m, t)) * cdouble(2.0 * t);
  return cdouble(re.to_complex().real(), im.to_complex().real());
}

}  // namespace detail

/// j_n(kR) != j_{n+2}(kR) for n = 0..n_max, relative tolerance 1e-12. The
/// degree n+1 denominator of gamma equals kR (j_n - j_{n+2}).
inline AssumptionReport check_assumption(double k, double R, int n_max) {
  detail::require(n_max >= 0, "check_assumption: n_max must be non-negative");
  detail::require(k > 0.0 && R > 0.0, "check_assumption: need k > 0 and R > 0");
  const cdouble t(k * R, 0.0);
  AssumptionReport rep;
  for (int n = 0; n <= n_max; ++n) {
    rep.holds.push_back(detail::distinct(spherical_j(n, t).value, spherical_j(n + 2, t).value));
    rep.gamma_denominator.push_back(detail::gamma_denominator(n, t).to_complex());
  }
  return rep;
}

inline NpEigenpair np_eigenpair(int m, double k, double R) {
  detail::require(m >= 0, "np_eigenpair: m must be non-negative");
  detail::require(k > 0.0 && R > 0.0, "np_eigenpair: need k > 0 and R > 0");
  auto assumption = check_assumption(k, R, m);
  for (int n = 0; n <= m; ++n)
    if (!assumption.holds[n]) throw Error(ErrorKind::assumption_violated, "assumption_kR violated", n);
  const double t = k * R;
  const cdouble I(0.0, 1.0);
  auto j = spherical_j(m, cdouble(t));
  auto h = spherical_h1(m, cdouble(t));
  NpEigenpair p;
  p.m = m;
  p.k = k;
  p.R = R;
  const cdouble jp_h = (j.derivative * h.value).to_complex();
  const cdouble j_hp = (j.value * h.derivative).to_complex();
  const cdouble j_h = (j.value * h.value).to_complex();
  p.lambda = 0.5 - I * t * t * jp_h;
  p.lambda_outer = -0.5 - I * t * t * j_hp;
  p.chi = -I * k * R * R * j_h;
  p.funk_hecke = m == 0 ? 2.0 * t * (jp_h + j_hp) + 2.0 * j_h : detail::funk_hecke_closed(m, t);
  const ScaledComplex den_g = j.derivative * cdouble(2.0 * t) + j.value;
  const ScaledComplex den_a = h.derivative * cdouble(2.0 * t) + h.value;
  if (den_g.is_zero()) throw Error(ErrorKind::assumption_violated, "assumption_kR violated", m);
  p.gamma = ScaledComplex::from_complex(-(2.0 + I * t * p.funk_hecke) * R / 2.0) / den_g;
  p.alpha = ScaledComplex::from_complex((2.0 - I * t * p.funk_hecke) * R / 2.0) / den_a;
  return p;
}

/// int_{-1}^{1} exp(i sqrt(2) kR sqrt(1-t)) P_m(t) dt, with s = sqrt(1-t):
/// int_0^{sqrt 2} exp(i sqrt(2) kR s) P_m(1 - s^2) 2s ds.
inline cdouble funk_hecke_quadrature(int m, double k, double R) {
  detail::require(m >= 0, "funk_hecke_quadrature: m must be non-negative");
  const double a = std::sqrt(2.0) * k * R;
  auto f = [&](double s) {
    const double x = 1.0 - s * s;
    double p0 = 1.0, p1 = x;
    if (m == 0) p1 = p0;
    for (int l = 1; l < m; ++l) {
      const double p2 = ((2.0 * l + 1.0) * x * p1 - l * p0) / (l + 1.0);
      p0 = p1;
      p1 = p2;
    }
    return std::exp(cdouble(0.0, a * s)) * (2.0 * s * p1);
  };
  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-12;
  return integrate(f, 0.0, std::sqrt(2.0), opt, m);
}

struct SurfaceRule {
  int initial_order = 16;  // Gauss points in s; azimuth uses 2 * order points
  int max_order = 1024;
  double tol = 1e-8;       // successive orders must agree to this (relative)
};

struct IdentityResidual {
  double residual = 0.0;                // max relative gap between the two sides
  std::vector<double> polar_angles;     // test points
  std::vector<cdouble> lhs, rhs;        // (K^k)^*[phi] and the right-hand side
  int order = 0;                        // converged order
};

namespace detail {

/// Zonal density sum_n beta_n Y_n evaluated at cos(theta) = z.
inline cdouble zonal_density(const std::map<int, cdouble>& beta, double z) {
  if (beta.empty()) return 0.0;
  const int n_max = beta.rbegin()->first;
  const auto p = legendre_all(n_max, z);
  cdouble s = 0.0;
  for (const auto& [n, b] : beta) s += b * harmonic_norm(n) * p[n];
  return s;
}

struct IdentitySides {
  cdouble lhs, rhs;
};

/// Both sides of the layer-potential identity at the sphere point with polar
/// angle theta, on a product rule of the given order. The rule is centred on
/// the test point; s = sqrt(1 - cos(angle to x)) removes the 1/|x-y| singularity.
inline IdentitySides identity_sides(double k, double R, const std::map<int, cdouble>& beta, double theta, int order) {
  const double pi = num::pi<double>();
  const cdouble I(0.0, 1.0);
  const GaussRule g = composite_gauss(gauss_legendre(order), 0.0, std::sqrt(2.0), 1);
  const int n_psi = 2 * order;
  const double ct = std::cos(theta), st = std::sin(theta);
  IdentitySides out{0.0, 0.0};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double s = g.nodes[i];
    const double c = 1.0 - s * s;                         // cos of the angle between x and y
    const double sa = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double rho = std::sqrt(2.0) * R * s;            // |x - y|
    const double normal_dot = R * (1.0 - c);              // <x - y, nu_x>
    // ds(y) = R^2 dc dpsi = R^2 2s ds dpsi
    const double w = g.weights[i] * 2.0 * s * R * R * (2.0 * pi / n_psi);
    const cdouble e = std::exp(I * k * rho);
    // d/dnu_x G = -exp(ik rho)(ik rho - 1) <x-y, nu_x> / (4 pi rho^3)
    const cdouble kernel_l = -e * (I * k * rho - 1.0) * normal_dot / (4.0 * pi * rho * rho * rho);
    const cdouble green = -e / (4.0 * pi * rho);
    const cdouble kernel_r = -green / (2.0 * R) - I * k * e / (8.0 * pi * R);
    cdouble density_sum = 0.0;
    for (int q = 0; q < n_psi; ++q) {
      const double psi = 2.0 * pi * (q + 0.5) / n_psi;
      const double z = ct * c - st * sa * std::cos(psi);  // global cos(theta_y)
      density_sum += zonal_density(beta, z);
    }
    out.lhs += w * kernel_l * density_sum;
    out.rhs += w * kernel_r * density_sum;
  }
  return out;
}

}  // namespace detail

/// Max relative discrepancy between (K^k)^*[phi] and
/// -S^k[phi] / (2R) - ik/(8 pi R) int exp(ik|x-y|) phi ds on the sphere, both by
/// direct surface quadrature, with order doubling until two successive orders
/// agree to rule.tol. Density: zonal coefficients beta_n of Y_n.
inline IdentityResidual np_identity_residual(double k, double R, const std::map<int, cdouble>& density,
                                             const SurfaceRule& rule = {},
                                             std::vector<double> polar_angles = {0.0, 0.7, 1.6, 2.5, 3.14159}) {
  detail::require(k > 0.0 && R > 0.0, "np_identity_residual: need k > 0 and R > 0");
  for (const auto& [n, b] : density) detail::require(n >= 0, "np_identity_residual: degrees must be non-negative");
  IdentityResidual out;
  out.polar_angles = polar_angles;
  bool all_zero = true;
  for (const auto& [n, b] : density) all_zero = all_zero && b == cdouble(0.0);
  if (all_zero) {
    out.lhs.assign(polar_angles.size(), 0.0);
    out.rhs.assign(polar_angles.size(), 0.0);
    return out;
  }
  std::vector<detail::IdentitySides> prev;
  for (int order = rule.initial_order; order <= rule.max_order; order *= 2) {
    std::vector<detail::IdentitySides> cur;
    for (double th : polar_angles) cur.push_back(detail::identity_sides(k, R, density, th, order));
    bool converged = !prev.empty();
    for (std::size_t i = 0; converged && i < cur.size(); ++i) {
      const double scale = std::max({std::abs(cur[i].lhs), std::abs(cur[i].rhs), 1e-300});
      converged = std::abs(cur[i].lhs - prev[i].lhs) <= rule.tol * scale &&
                  std::abs(cur[i].rhs - prev[i].rhs) <= rule.tol * scale;
    }
    prev = cur;
    if (converged) {
      out.order = order;
      for (const auto& s : cur) {
        out.lhs.push_back(s.lhs);
        out.rhs.push_back(s.rhs);
        const double scale = std::max(std::abs(s.lhs), std::abs(s.rhs));
        if (scale > 0.0) out.residual = std::max(out.residual, std::abs(s.lhs - s.rhs) / scale);
      }
      return out;
    }
  }
  throw Error(ErrorKind::quadrature_failure, "quadrature failure");
}

struct NpSolution {
  std::map<int, ScaledComplex> phi_hat;  // interior density, u = S^{k1}[phi] in B_{r_e}
  std::map<int, ScaledComplex> psi_hat;  // exterior density, u = F + S^k[psi] outside
  ModalSolution solution;                // the layer-potential field as modal coefficients
  EnergyReport energy;
  double mie_energy = 0.0;
  double route_residual = 0.0;           // relative energy gap to the series solve
};

/// Layer-potential solve of the no-core problem (3D):
///   phi_n = (k chi_k j'(k r_e) - (1/2 + lambda_k) j(k r_e)) beta_n
///           / ((eps_s + i delta)(-1/2 + lambda_{k1}) chi_k - (1/2 + lambda_k) chi_{k1})
/// with lambda and chi at the real wavenumber k and the complex k1. The energy
/// is cross-checked against the series solve; a gap above 1e-6 throws
/// formulation_mismatch.
inline NpSolution solve_nocore_via_np(const PlasmonConfig& cfg, const SourceCoefficients& src) {
  validate(cfg);
  detail::require(cfg.dim == 3, "solve_nocore_via_np: 3D only");
  detail::require(!cfg.has_core(), "solve_nocore_via_np: r_i must be 0");
  check_source(cfg, src);
  const cdouble I(0.0, 1.0);
  const double R = cfg.r_e;
  const WaveNumbers w = config_wavenumbers(cfg);
  const cdouble eps(cfg.eps_s, cfg.delta);
  const cdouble t(cfg.k * R, 0.0);
  const cdouble t1 = w.k1 * R;
  NpSolution out;
  out.solution = ModalSolution{cfg, src, w, {}};
  for (const auto& [n, beta] : src.coeffs) {
    auto j = spherical_j(n, t);
    auto h = spherical_h1(n, t);
    auto j1 = spherical_j(n, t1);
    auto h1 = spherical_h1(n, t1);
    if (detail::gamma_denominator(n, t1).is_zero())
      throw Error(ErrorKind::assumption_violated, "assumption_kR violated", n);
    // Cancellation-free forms: 1/2 + lambda_k from the outer form, -1/2 + lambda_k1 from the inner one.
    const ScaledComplex half_plus = j.value * h.derivative * (-I * t * t);
    const ScaledComplex minus_half_1 = j1.derivative * h1.value * (-I * t1 * t1);
    const ScaledComplex chi = j.value * h.value * (-I * cfg.k * R * R);
    const ScaledComplex chi1 = j1.value * h1.value * (-I * w.k1 * R * R);
    const ScaledComplex num = chi * j.derivative * cdouble(cfg.k) - half_plus * j.value;
    const ScaledComplex den = minus_half_1 * chi * eps - half_plus * chi1;
    if (den.is_zero()) throw Error(ErrorKind::exact_modal_resonance, "exact modal resonance", n);
    const ScaledComplex phi = num / den * beta;
    const ScaledComplex psi = (chi1 * phi - j.value * beta) / chi;
    out.phi_hat[n] = phi;
    out.psi_hat[n] = psi;
    ModeCoefficients m;
    m.n = n;
    m.a = h1.value * phi * (-I * w.k1 * R * R);
    m.b = beta;
    m.c = j.value * psi * (-I * cfg.k * R * R);
    m.g = den;
    out.solution.modes.push_back(m);
  }
  EnergyOptions opt;
  opt.crosscheck = false;
  out.energy = dissipation_energy(out.solution, opt);
  out.mie_energy = dissipation_energy(solve_nocore(cfg, src), opt).total;
  const double scale = std::max(std::abs(out.energy.total), std::abs(out.mie_energy));
  out.route_residual = scale == 0.0 ? 0.0 : std::abs(out.energy.total - out.mie_energy) / scale;
  if (out.route_residual > 1e-6)
    throw Error(ErrorKind::formulation_mismatch, "formulation mismatch");
  return out;
}

}  // namespace alr
