#pragma once

// delta^-1 scaling of the dissipation energy at a condition-minimizing k.

#include <cmath>
#include <vector>

#include "alr/error.hpp"
#include "alr/fields.hpp"
#include "alr/scatter.hpp"
#include "alr/specfun.hpp"
#include "alr/sweep.hpp"

namespace alr {

/// beta_n chosen so the incident mode has unit magnitude at r: |beta j_n(k r)| = 1.
inline SourceCoefficients unit_incident_source(int dim, int n, double k, double r, double support_radius) {
  detail::require(dim == 2 || dim == 3, "dim must be 2 or 3");
  const cdouble z(k * r, 0.0);
  const ScaledComplex j = dim == 3 ? spherical_j(n, z).value : cyl_j(n, z).value;
  SourceCoefficients s;
  s.dim = dim;
  s.coeffs[n] = ScaledComplex::from_log(-j.log_magnitude(), cdouble(1.0, 0.0));
  s.support_radius = support_radius;
  return s;
}

struct SlopeLawRequest {
  int dim = 3;
  int n0 = 60;
  double r_e = 1.0;
  std::vector<double> k_grid;      // default: log grid on [1e-6, 10]
  std::vector<double> delta_grid;  // default: log grid on [1e-6, 1e-3]
  double delta0 = 0.0;
  int jobs = 0;
};

struct SlopeLawReport {
  double k = 0.0;
  double condition_abs = 0.0;
  PlasmonConfig config;  // delta holds the theorem value rho^n0 with rho = 1/2
  std::vector<double> deltas;
  std::vector<double> energies;
  std::vector<double> crosscheck;
  double slope = 0.0;
};

/// Sweeps the no-core condition in 80 digits at eps_s = -1 - 1/n0 (3D) or -1 (2D),
/// delta = 2^-n0, takes k at the smallest |condition|, then fits log E against
/// log(delta - delta0) for a unit-incident singleton source in mode n0.
inline SlopeLawReport slope_law(const SlopeLawRequest& req) {
  detail::require(req.dim == 2 || req.dim == 3, "dim must be 2 or 3");
  detail::require(req.n0 >= asymptotic_threshold, "slope_law: n0 below the asymptotic threshold");
  SlopeLawReport rep;
  rep.config.dim = req.dim;
  rep.config.r_e = req.r_e;
  rep.config.eps_s = req.dim == 3 ? -1.0 - 1.0 / req.n0 : -1.0;
  rep.config.delta = std::pow(0.5, req.n0);

  SweepRequest sw;
  sw.target = SweepTarget::condition_nocore;
  sw.grid = req.k_grid.empty() ? log_grid(1e-6, 10.0, 36) : req.k_grid;
  sw.config = rep.config;
  sw.n0 = req.n0;
  sw.extended_precision = true;
  sw.jobs = req.jobs;
  auto curve = sweep(sw);
  if (!curve.argmin_abs) throw Error(ErrorKind::no_root_found, "condition sweep failed on every grid point", req.n0);
  rep.k = curve.grid[*curve.argmin_abs];
  rep.condition_abs = std::abs(curve.values[*curve.argmin_abs]);
  rep.config.k = rep.k;

  rep.deltas = req.delta_grid.empty() ? log_grid(1e-6, 1e-3, 13) : req.delta_grid;
  rep.energies.assign(rep.deltas.size(), 0.0);
  rep.crosscheck.assign(rep.deltas.size(), 0.0);
  const auto src = unit_incident_source(req.dim, req.n0, rep.k, req.r_e, 2.0 * req.r_e);
  parallel_for(rep.deltas.size(), req.jobs, [&](std::size_t i) {
    PlasmonConfig c = rep.config;
    c.delta = rep.deltas[i];
    auto e = dissipation_energy(solve(c, src), {});
    rep.energies[i] = e.total;
    rep.crosscheck[i] = e.crosscheck_residual;
  });
  rep.slope = loglog_slope(rep.deltas, rep.energies, req.delta0);
  return rep;
}

}  // namespace alr
