#pragma once

// Piecewise field evaluation, the dissipation functional and exterior
// boundedness probes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "alr/error.hpp"
#include "alr/quadrature.hpp"
#include "alr/scaled_complex.hpp"
#include "alr/scatter.hpp"
#include "alr/specfun.hpp"

namespace alr {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // ignored in 2D
};

enum class Region { core, shell, exterior };

/// Which one-sided limit to take when a point sits exactly on an interface.
enum class Side { automatic, inner, outer };

struct FieldSample {
  cdouble value;
  cdouble radial_derivative;
  Region region;
};

namespace detail {

struct Polar {
  double r;
  double cos_theta;  // 3D: polar angle from +z; 2D: unused
  double theta;      // 2D: azimuth
};

inline Polar to_polar(int dim, const Point& p) {
  Polar out{};
  if (dim == 3) {
    out.r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    out.cos_theta = out.r > 0.0 ? std::clamp(p.z / out.r, -1.0, 1.0) : 1.0;
  } else {
    out.r = std::hypot(p.x, p.y);
    out.theta = std::atan2(p.y, p.x);
  }
  return out;
}

/// Radial profile f(r) and df/dr of one mode in one region.
struct RadialValue {
  ScaledComplex f, df;
};

inline RadialValue mode_radial(const ModalSolution& sol, const ModeCoefficients& m, Region region, double r) {
  const auto& cfg = sol.config;
  const int dim = cfg.dim;
  const int n = m.n;
  RadialValue out;
  auto add = [&](const ScaledComplex& coef, const BesselValue<double>& b, cdouble kk) {
    if (coef.is_zero()) return;
    out.f += coef * b.value;
    out.df += coef * b.derivative * kk;
  };
  const cdouble k(cfg.k, 0.0);
  const cdouble k1 = sol.waves.k1;
  switch (region) {
    case Region::core: {
      const cdouble kc(cfg.k / std::sqrt(cfg.eps_c), 0.0);
      add(m.a, bessel_j(dim, n, kc * r), kc);
      break;
    }
    case Region::shell:
      if (!cfg.has_core()) {
        add(m.a, bessel_j(dim, n, k1 * r), k1);
      } else {
        add(m.b, bessel_j(dim, n, k1 * r), k1);
        add(m.c, bessel_h(dim, n, k1 * r), k1);
      }
      break;
    case Region::exterior: {
      const ScaledComplex& incident = cfg.has_core() ? m.e : m.b;
      const ScaledComplex& scattered = cfg.has_core() ? m.d : m.c;
      add(incident, bessel_j(dim, n, k * r), k);
      add(scattered, bessel_h(dim, n, k * r), k);
      break;
    }
  }
  return out;
}

/// Scattered part only (exterior region, Hankel term).
inline RadialValue mode_scattered(const ModalSolution& sol, const ModeCoefficients& m, double r) {
  const auto& cfg = sol.config;
  const ScaledComplex& coef = cfg.has_core() ? m.d : m.c;
  RadialValue out;
  if (coef.is_zero()) return out;
  const cdouble k(cfg.k, 0.0);
  auto h = bessel_h(cfg.dim, m.n, k * r);
  out.f = coef * h.value;
  out.df = coef * h.derivative * k;
  return out;
}

inline double harmonic_norm(int n) { return std::sqrt((2.0 * n + 1.0) / (4.0 * num::pi<double>())); }

inline Region locate(const PlasmonConfig& cfg, double r, Side side) {
  // Points within rounding of an interface take the requested side.
  auto below = [&](double interface) {
    if (side != Side::automatic && std::abs(r - interface) <= 1e-12 * interface) return side == Side::inner;
    return r < interface || (r == interface && side == Side::inner);
  };
  if (cfg.has_core() && below(cfg.r_i)) return Region::core;
  if (below(cfg.r_e)) return Region::shell;
  return Region::exterior;
}

/// Sums sum_n f_n(r) Y_n at one point given per-mode radial values.
template <class Radial>
FieldSample sum_modes(const ModalSolution& sol, const Polar& pol, Radial&& radial) {
  const int dim = sol.config.dim;
  int n_max = 0;
  for (const auto& m : sol.modes) n_max = std::max(n_max, std::abs(m.n));
  std::vector<double> legendre;
  if (dim == 3) legendre = legendre_all(n_max, pol.cos_theta);
  FieldSample s{cdouble(0.0), cdouble(0.0), Region::exterior};
  for (const auto& m : sol.modes) {
    RadialValue rv = radial(m);
    if (rv.f.is_zero() && rv.df.is_zero()) continue;
    cdouble angular = dim == 3 ? cdouble(harmonic_norm(m.n) * legendre[m.n], 0.0)
                               : std::polar(1.0, m.n * pol.theta);
    s.value += rv.f.to_complex() * angular;
    s.radial_derivative += rv.df.to_complex() * angular;
  }
  return s;
}

}  // namespace detail

/// Field u and its radial derivative at a point of the series region.
inline FieldSample eval_field_full(const ModalSolution& sol, const Point& p, Side side = Side::automatic) {
  const auto pol = detail::to_polar(sol.config.dim, p);
  if (!(pol.r < sol.source.support_radius))
    throw Error(ErrorKind::outside_representation, "outside representation region");
  const Region region = detail::locate(sol.config, pol.r, side);
  auto s = detail::sum_modes(sol, pol, [&](const ModeCoefficients& m) {
    return detail::mode_radial(sol, m, region, pol.r);
  });
  s.region = region;
  return s;
}

inline cdouble eval_field(const ModalSolution& sol, const Point& p) { return eval_field_full(sol, p).value; }

/// Source potential F at a point inside the source-free ball.
inline cdouble eval_source(const ModalSolution& sol, const Point& p) {
  const auto pol = detail::to_polar(sol.config.dim, p);
  if (!(pol.r < sol.source.support_radius))
    throw Error(ErrorKind::outside_representation, "outside representation region");
  const cdouble k(sol.config.k, 0.0);
  const auto& cfg = sol.config;
  return detail::sum_modes(sol, pol, [&](const ModeCoefficients& m) {
           detail::RadialValue rv;
           const ScaledComplex beta = sol.source.beta(m.n);
           if (beta.is_zero()) return rv;
           auto j = bessel_j(cfg.dim, m.n, k * pol.r);
           rv.f = beta * j.value;
           rv.df = beta * j.derivative * k;
           return rv;
         })
      .value;
}

/// u - F outside the plasmonic structure (any r > r_e).
inline cdouble eval_scattered(const ModalSolution& sol, const Point& p) {
  const auto pol = detail::to_polar(sol.config.dim, p);
  detail::require(pol.r > sol.config.r_e, "eval_scattered: point must lie outside r_e");
  return detail::sum_modes(sol, pol, [&](const ModeCoefficients& m) { return detail::mode_scattered(sol, m, pol.r); })
      .value;
}

struct EnergyReport {
  double total = 0.0;
  std::vector<int> modes;
  std::vector<double> per_mode;
  double crosscheck_residual = 0.0;
  double volume_total = 0.0;
  int truncation_order = 0;
  bool trusted = false;
};

struct EnergyOptions {
  bool crosscheck = true;
  double rel_tol = 1e-10;
  double trust_tol = 1e-6;
};

namespace detail {

/// Green's-formula energy of one mode in the lossy region.
inline double mode_energy(const ModalSolution& sol, const ModeCoefficients& m, double rel_tol) {
  const auto& cfg = sol.config;
  const int dim = cfg.dim;
  if (cfg.delta == 0.0) return 0.0;
  const double lo = cfg.has_core() ? cfg.r_i : 0.0;
  const double hi = cfg.r_e;
  auto weight = [&](double r) { return dim == 3 ? r * r : r; };
  RadialValue at_hi = mode_radial(sol, m, Region::shell, hi);
  RadialValue at_lo;
  double ref = at_hi.f.log_magnitude();
  if (cfg.has_core()) {
    at_lo = mode_radial(sol, m, Region::shell, lo);
    ref = std::max(ref, at_lo.f.log_magnitude());
  }
  if (ref == -std::numeric_limits<double>::infinity()) return 0.0;
  auto integrand = [&](double r) {
    RadialValue v = mode_radial(sol, m, Region::shell, r);
    if (v.f.is_zero()) return 0.0;
    return std::exp(2.0 * (v.f.log_magnitude() - ref)) * weight(r);
  };
  QuadratureOptions qo;
  qo.rel_tol = rel_tol;
  const double volume = integrate(integrand, lo, hi, qo, m.n);
  auto boundary = [&](const RadialValue& v, double r) {
    if (v.f.is_zero()) return cdouble(0.0);
    return (v.f.conj() * v.df).to_complex() * std::exp(-2.0 * ref) * weight(r);
  };
  cdouble bracket = sol.waves.k1 * sol.waves.k1 * volume + boundary(at_hi, hi);
  if (cfg.has_core()) bracket -= boundary(at_lo, lo);
  const double angular = dim == 3 ? 1.0 : 2.0 * num::pi<double>();
  const double scaled = cfg.delta * angular * bracket.real();
  if (scaled == 0.0) return 0.0;
  return std::copysign(std::exp(2.0 * ref + std::log(std::abs(scaled))), scaled);
}

/// delta * int |grad u|^2 over the lossy region on a product grid.
inline double volume_energy(const ModalSolution& sol, double rel_tol) {
  const auto& cfg = sol.config;
  const int dim = cfg.dim;
  if (cfg.delta == 0.0 || sol.modes.empty()) return 0.0;
  int n_max = 0;
  for (const auto& m : sol.modes) n_max = std::max(n_max, std::abs(m.n));
  const double lo = cfg.has_core() ? cfg.r_i : 0.0;
  const double hi = cfg.r_e;
  const double pi = num::pi<double>();

  // Angular grid: exact for the products of harmonics present.
  std::vector<double> ang_nodes, ang_weights;
  std::vector<std::vector<double>> y, dy;  // per angular node, per degree
  if (dim == 3) {
    GaussRule g = gauss_legendre(n_max + 2);
    ang_nodes = g.nodes;
    for (double w : g.weights) ang_weights.push_back(2.0 * pi * w);
    for (double x : ang_nodes) {
      auto p = legendre_all(n_max, x);
      const double s = std::sqrt(1.0 - x * x);
      std::vector<double> yy(n_max + 1), dd(n_max + 1);
      for (int n = 0; n <= n_max; ++n) {
        yy[n] = harmonic_norm(n) * p[n];
        // dY/dtheta = -sin(theta) P_n'(x) = -n (P_{n-1} - x P_n) / sin(theta)
        dd[n] = n == 0 ? 0.0 : -harmonic_norm(n) * n * (p[n - 1] - x * p[n]) / s;
      }
      y.push_back(std::move(yy));
      dy.push_back(std::move(dd));
    }
  } else {
    const int count = 2 * n_max + 2;
    for (int i = 0; i < count; ++i) {
      ang_nodes.push_back(2.0 * pi * i / count);
      ang_weights.push_back(2.0 * pi / count);
    }
  }

  auto level = [&](int panels, const GaussRule& base) {
    GaussRule rr = composite_gauss(base, lo, hi, panels);
    double total = 0.0;
    std::vector<cdouble> f(sol.modes.size()), df(sol.modes.size());
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
      const double r = rr.nodes[i];
      for (std::size_t j = 0; j < sol.modes.size(); ++j) {
        RadialValue v = mode_radial(sol, sol.modes[j], Region::shell, r);
        f[j] = v.f.to_complex();
        df[j] = v.df.to_complex();
      }
      double shell = 0.0;
      for (std::size_t a = 0; a < ang_nodes.size(); ++a) {
        cdouble ur(0.0), ut(0.0);
        for (std::size_t j = 0; j < sol.modes.size(); ++j) {
          const int n = sol.modes[j].n;
          if (dim == 3) {
            ur += df[j] * y[a][n];
            ut += f[j] * dy[a][n];
          } else {
            const cdouble e = std::polar(1.0, n * ang_nodes[a]);
            ur += df[j] * e;
            ut += f[j] * cdouble(0.0, static_cast<double>(n)) * e;
          }
        }
        shell += ang_weights[a] * (std::norm(ur) + std::norm(ut) / (r * r));
      }
      total += rr.weights[i] * shell * (dim == 3 ? r * r : r);
    }
    return cfg.delta * total;
  };

  GaussRule base = gauss_legendre(std::min(n_max + 30, 400));
  double previous = level(1, base);
  for (int panels = 2; panels <= 64; panels *= 2) {
    double current = level(panels, base);
    if (std::abs(current - previous) <= rel_tol * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

}  // namespace detail

/// Dissipation energy by the modal Green's-formula representation, with an
/// independent volume-quadrature cross-check.
inline EnergyReport dissipation_energy(const ModalSolution& sol, const EnergyOptions& opt = {}) {
  EnergyReport rep;
  for (const auto& m : sol.modes) {
    rep.modes.push_back(m.n);
    rep.per_mode.push_back(detail::mode_energy(sol, m, opt.rel_tol));
    if (!(m.a.is_zero() && m.b.is_zero() && m.c.is_zero() && m.d.is_zero() && m.e.is_zero()))
      rep.truncation_order = std::max(rep.truncation_order, std::abs(m.n));
  }
  rep.total = std::accumulate(rep.per_mode.begin(), rep.per_mode.end(), 0.0);
  if (opt.crosscheck) {
    rep.volume_total = detail::volume_energy(sol, opt.rel_tol);
    const double scale = std::max(std::abs(rep.total), std::abs(rep.volume_total));
    rep.crosscheck_residual = scale == 0.0 ? 0.0 : std::abs(rep.total - rep.volume_total) / scale;
    rep.trusted = rep.crosscheck_residual < opt.trust_tol;
  } else {
    rep.crosscheck_residual = std::numeric_limits<double>::quiet_NaN();
    rep.trusted = false;
  }
  return rep;
}

/// E_delta[u] > M.
inline bool weak_resonance_check(const EnergyReport& report, double threshold) {
  detail::require(threshold > 0.0, "weak_resonance_check: threshold must be positive");
  return report.total > threshold;
}

struct ExteriorBoundReport {
  double probe_radius = 0.0;
  double sup_estimate = 0.0;
  double sampled_max = 0.0;
  double tail_bound = 0.0;
  int sample_count = 0;
};

/// max |u - F| over spread directions at probe_radius plus a geometric
/// majorant of the modes beyond the source window.
inline ExteriorBoundReport exterior_bound_probe(const ModalSolution& sol, double probe_radius, int sample_count) {
  const auto& cfg = sol.config;
  detail::require(probe_radius > cfg.r_e, "exterior_bound_probe: probe_radius must exceed r_e");
  detail::require(sample_count >= 1, "exterior_bound_probe: need at least one sample");
  ExteriorBoundReport rep;
  rep.probe_radius = probe_radius;
  rep.sample_count = sample_count;
  const double pi = num::pi<double>();
  for (int i = 0; i < sample_count; ++i) {
    Point p;
    if (cfg.dim == 3) {
      // Fibonacci lattice on the sphere.
      const double z = 1.0 - (2.0 * i + 1.0) / sample_count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = pi * (3.0 - std::sqrt(5.0)) * i;
      p = {probe_radius * rho * std::cos(phi), probe_radius * rho * std::sin(phi), probe_radius * z};
    } else {
      const double t = 2.0 * pi * i / sample_count;
      p = {probe_radius * std::cos(t), probe_radius * std::sin(t), 0.0};
    }
    rep.sampled_max = std::max(rep.sampled_max, std::abs(eval_scattered(sol, p)));
  }
  // Majorant terms |coef_n h_n(k R)| max|Y_n| for the two highest degrees.
  std::vector<std::pair<int, double>> terms;
  for (const auto& m : sol.modes) {
    if (m.n < 0) continue;
    auto v = detail::mode_scattered(sol, m, probe_radius);
    double lm = v.f.log_magnitude();
    if (cfg.dim == 3) lm += std::log(detail::harmonic_norm(m.n));
    terms.emplace_back(m.n, lm);
  }
  std::sort(terms.begin(), terms.end());
  if (terms.size() >= 2) {
    const double last = terms.back().second;
    const double prev = terms[terms.size() - 2].second;
    if (last == -INFINITY) {
      rep.tail_bound = 0.0;
    } else {
      const double log_q = last - prev;
      rep.tail_bound = log_q < 0.0 ? std::exp(last + log_q) / (1.0 - std::exp(log_q)) * (cfg.dim == 2 ? 2.0 : 1.0)
                                   : std::numeric_limits<double>::infinity();
    }
  }
  rep.sup_estimate = rep.sampled_max + rep.tail_bound;
  return rep;
}

/// Least-squares slope of log E against log(delta - delta0).
inline double loglog_slope(const std::vector<double>& deltas, const std::vector<double>& energies,
                           double delta0 = 0.0) {
  detail::require(deltas.size() == energies.size() && deltas.size() >= 2, "loglog_slope: need matching grids");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    detail::require(deltas[i] > delta0 && energies[i] > 0.0, "loglog_slope: values must be positive");
    const double x = std::log(deltas[i] - delta0), yv = std::log(energies[i]);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace alr
