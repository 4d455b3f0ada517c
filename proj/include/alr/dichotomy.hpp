#pragma once

// Critical-radius experiment for the core-shell theorem configurations:
// energies and exterior probes for point sources inside and outside r_*.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "alr/error.hpp"
#include "alr/fields.hpp"
#include "alr/multiprecision.hpp"
#include "alr/parallel.hpp"
#include "alr/resonance.hpp"
#include "alr/scatter.hpp"
#include "alr/sweep.hpp"

namespace alr {

/// Theorem parameters for mode n0: 3D eps_c = (1 + 1/n0)^2, eps_s = -1 - 1/n0;
/// 2D eps_c = 1, eps_s = -1; delta = (r_i / r_e)^n0 in both.
template <class Real>
struct TheoremParameters {
  Real eps_c, eps_s, delta;
};

template <class Real>
TheoremParameters<Real> theorem_parameters(int dim, int n0, const Real& r_i, const Real& r_e) {
  using std::pow;
  detail::require(dim == 2 || dim == 3, "dim must be 2 or 3");
  detail::require(n0 >= 1, "n0 must be positive");
  const Real one(1);
  TheoremParameters<Real> p;
  if (dim == 3) {
    p.eps_c = (one + one / n0) * (one + one / n0);
    p.eps_s = -one - one / n0;
  } else {
    p.eps_c = one;
    p.eps_s = -one;
  }
  p.delta = pow(r_i / r_e, n0);
  return p;
}

inline PlasmonConfig theorem_config(int dim, int n0, double r_i, double r_e, double k) {
  auto p = theorem_parameters<double>(dim, n0, r_i, r_e);
  PlasmonConfig c;
  c.dim = dim;
  c.r_i = r_i;
  c.r_e = r_e;
  c.eps_c = p.eps_c;
  c.eps_s = p.eps_s;
  c.delta = p.delta;
  c.k = k;
  return c;
}

/// Core-shell condition at the theorem parameters, all arithmetic in 80 digits.
inline ConditionValue theorem_condition(int dim, int n0, double r_i, double r_e, double k) {
  using R = mp::real;
  auto p = theorem_parameters<R>(dim, n0, R(r_i), R(r_e));
  auto v = condition_lhs_coreshell_t<R>(dim, n0, R(k), R(r_i), R(r_e), p.eps_c, p.eps_s, p.delta);
  return {num::to_cdouble(v.normalized), v.raw.to_double()};
}

/// Per-unit-source coefficients of modes [n_min, n_max] at the theorem
/// parameters, solved in 80 digits and rounded to double scaled form.
inline std::vector<ModeCoefficients> theorem_modes_extended(int dim, int n0, double r_i, double r_e, double k,
                                                            int n_min, int n_max, int jobs = 0) {
  using R = mp::real;
  auto p = theorem_parameters<R>(dim, n0, R(r_i), R(r_e));
  auto w = shell_wavenumbers<R>(R(k), p.eps_s, p.delta);
  std::vector<ModeCoefficients> out(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    const int n = n_min + static_cast<int>(i);
    auto m = solve_mode_coreshell<R>(dim, n, w, R(r_i), R(r_e), p.eps_c, BasicScaledComplex<R>::one());
    out[i] = {n, m.a.to_double(), m.b.to_double(), m.c.to_double(), m.d.to_double(), m.e.to_double(), m.g.to_double()};
  });
  return out;
}

/// Assembles a modal solution from per-unit coefficients and a source.
inline ModalSolution assemble_solution(const PlasmonConfig& cfg, const WaveNumbers& waves,
                                       const std::vector<ModeCoefficients>& unit, const SourceCoefficients& src) {
  ModalSolution sol{cfg, src, waves, {}};
  for (const auto& [n, beta] : src.coeffs) {
    auto it = std::find_if(unit.begin(), unit.end(), [&](const ModeCoefficients& m) { return m.n == std::abs(n); });
    detail::require(it != unit.end(), "assemble_solution: missing unit mode");
    ModeCoefficients m = *it;
    m.n = n;
    m.a = m.a * beta;
    m.b = m.b * beta;
    m.c = m.c * beta;
    m.d = m.d * beta;
    m.e = m.e * beta;
    sol.modes.push_back(m);
  }
  return sol;
}

struct DichotomyRequest {
  int dim = 3;
  double r_i = 0.5;
  double r_e = 1.0;
  std::vector<int> n0_list{40, 60, 80};
  double inside_radius = 1.2;
  double outside_radius = 1.8;
  std::optional<double> k;      // fixed wavenumber; otherwise chosen by a condition sweep
  std::vector<double> k_grid;   // default: log grid on [1e-16, 1]
  int n_min = asymptotic_threshold;  // modes below are zeroed in the source
  int window = 150;                  // modes kept above n0
  double probe_factor = 1.05;        // exterior probe at probe_factor * r_e^2 / r_i
  double near_probe_factor = 1.05;   // localization probe at near_probe_factor * r_e
  int probe_samples = 64;
  bool crosscheck = true;
  int jobs = 0;
};

struct DichotomyRow {
  int n0 = 0;
  double k = 0.0;
  double condition_abs = 0.0;  // |normalized condition| at k
  PlasmonConfig config;
  int n_max = 0;
  double energy_inside = 0.0;
  double energy_outside = 0.0;
  double crosscheck_inside = 0.0;
  double crosscheck_outside = 0.0;
  ExteriorBoundReport probe_inside;
  ExteriorBoundReport probe_outside;
  ExteriorBoundReport near_probe_inside;
};

struct DichotomyReport {
  double r_star = 0.0;
  std::vector<DichotomyRow> rows;
  bool inside_increasing = false;
  bool outside_bounded = false;  // within 10x of the first row
  bool probe_bounded = false;    // inside-source exterior probe within 10x of the first row
  bool near_probe_growing = false;
};

/// Largest grid k whose condition magnitude is within 10% of the grid minimum.
inline std::pair<double, double> choose_condition_k(int dim, int n0, double r_i, double r_e,
                                                    const std::vector<double>& grid, int jobs = 0) {
  std::vector<double> mag(grid.size(), INFINITY);
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    try {
      mag[i] = std::abs(theorem_condition(dim, n0, r_i, r_e, grid[i]).normalized);
    } catch (const Error&) {
    }
  });
  const double best = *std::min_element(mag.begin(), mag.end());
  if (!std::isfinite(best)) throw Error(ErrorKind::no_root_found, "condition sweep failed on every grid point", n0);
  for (std::size_t i = grid.size(); i-- > 0;)
    if (mag[i] <= 1.1 * best) return {grid[i], mag[i]};
  return {grid.front(), mag.front()};
}

inline DichotomyReport dichotomy_experiment(const DichotomyRequest& req) {
  detail::require(req.dim == 2 || req.dim == 3, "dim must be 2 or 3");
  detail::require(!req.n0_list.empty(), "dichotomy: n0_list must be nonempty");
  for (std::size_t i = 0; i < req.n0_list.size(); ++i) {
    detail::require(req.n0_list[i] >= asymptotic_threshold, "dichotomy: n0 must be at least the asymptotic threshold");
    detail::require(i == 0 || req.n0_list[i] > req.n0_list[i - 1], "dichotomy: n0_list must be increasing");
  }
  DichotomyReport rep;
  rep.r_star = critical_radius(req.r_i, req.r_e);
  detail::require(req.r_i < req.r_e, "dichotomy: need r_i < r_e");
  detail::require(req.inside_radius > req.r_e && req.inside_radius < rep.r_star,
                  "dichotomy: inside source radius must lie in (r_e, r_*)");
  detail::require(req.outside_radius > rep.r_star, "dichotomy: outside source radius must exceed r_*");
  const auto grid = req.k_grid.empty() ? log_grid(1e-16, 1.0, 33) : req.k_grid;

  for (int n0 : req.n0_list) {
    DichotomyRow row;
    row.n0 = n0;
    if (req.k) {
      row.k = *req.k;
      row.condition_abs = std::abs(theorem_condition(req.dim, n0, req.r_i, req.r_e, row.k).normalized);
    } else {
      std::tie(row.k, row.condition_abs) = choose_condition_k(req.dim, n0, req.r_i, req.r_e, grid, req.jobs);
    }
    row.config = theorem_config(req.dim, n0, req.r_i, req.r_e, row.k);
    row.n_max = n0 + req.window;
    const int n_min = std::min(req.n_min, n0);
    auto unit = theorem_modes_extended(req.dim, n0, req.r_i, req.r_e, row.k, n_min, row.n_max, req.jobs);
    {
      using R = mp::real;
      auto p = theorem_parameters<R>(req.dim, n0, R(req.r_i), R(req.r_e));
      auto w = shell_wavenumbers<R>(R(row.k), p.eps_s, p.delta);
      WaveNumbers waves{row.k, num::to_cdouble(w.k1), num::to_cdouble(w.sqrt_shell)};
      auto run = [&](double radius, double& energy, double& residual, ExteriorBoundReport& probe,
                     ExteriorBoundReport* near) {
        auto src = point_source_coefficients(req.dim, row.k, radius, 1.0, row.n_max, n_min);
        auto sol = assemble_solution(row.config, waves, unit, src);
        EnergyOptions opt;
        opt.crosscheck = req.crosscheck;
        auto e = dissipation_energy(sol, opt);
        energy = e.total;
        residual = e.crosscheck_residual;
        probe = exterior_bound_probe(sol, req.probe_factor * req.r_e * req.r_e / req.r_i, req.probe_samples);
        if (near) *near = exterior_bound_probe(sol, req.near_probe_factor * req.r_e, req.probe_samples);
      };
      run(req.inside_radius, row.energy_inside, row.crosscheck_inside, row.probe_inside, &row.near_probe_inside);
      run(req.outside_radius, row.energy_outside, row.crosscheck_outside, row.probe_outside, nullptr);
    }
    rep.rows.push_back(row);
  }
  rep.inside_increasing = true;
  rep.outside_bounded = true;
  rep.probe_bounded = true;
  rep.near_probe_growing = true;
  const auto& first = rep.rows.front();
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    rep.inside_increasing = rep.inside_increasing && r.energy_inside > rep.rows[i - 1].energy_inside;
    rep.outside_bounded = rep.outside_bounded && r.energy_outside <= 10.0 * first.energy_outside;
    rep.probe_bounded = rep.probe_bounded && r.probe_inside.sup_estimate <= 10.0 * first.probe_inside.sup_estimate;
    rep.near_probe_growing = rep.near_probe_growing &&
                             r.near_probe_inside.sup_estimate > rep.rows[i - 1].near_probe_inside.sup_estimate;
  }
  return rep;
}

}  // namespace alr
