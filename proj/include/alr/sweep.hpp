#pragma once

// Parameter sweeps of the resonance conditions, the modal denominator and
// the dissipation energy, with sign-change brackets and bisection refinement.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "alr/error.hpp"
#include "alr/fields.hpp"
#include "alr/multiprecision.hpp"
#include "alr/parallel.hpp"
#include "alr/resonance.hpp"
#include "alr/scatter.hpp"

namespace alr {

enum class SweepTarget { condition_nocore, condition_coreshell, denominator, energy };

inline const char* to_string(SweepTarget t) {
  switch (t) {
    case SweepTarget::condition_nocore: return "condition_nocore";
    case SweepTarget::condition_coreshell: return "condition_coreshell";
    case SweepTarget::denominator: return "denominator";
    case SweepTarget::energy: return "energy";
  }
  return "unknown";
}

struct SweepRequest {
  SweepTarget target = SweepTarget::condition_nocore;
  std::string parameter = "k";  // "k" or "delta"
  std::vector<double> grid;
  PlasmonConfig config;
  int n0 = 0;
  SourceCoefficients source;         // energy sweeps only
  bool extended_precision = false;   // condition sweeps in 80 digits
  std::optional<double> noise_floor;  // relative; default 1e-13 (double) or 1e-60 (extended)
  double near_zero = 1e-3;
  bool energy_crosscheck = false;
  int jobs = 0;
};

/// Sign change of the real (imaginary = false) or imaginary part between
/// grid[index] and grid[index + 1].
struct SignBracket {
  std::size_t index = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool imaginary = false;
};

struct ResidualCurve {
  std::string parameter_name;
  SweepTarget target = SweepTarget::condition_nocore;
  std::vector<double> grid;
  std::vector<cdouble> values;            // condition / denominator sweeps
  std::vector<double> raw_log_magnitude;  // log |raw value| before normalization
  std::vector<double> energies;           // energy sweeps
  std::vector<std::string> errors;        // empty when the point succeeded
  PlasmonConfig config;
  int n0 = 0;
  std::vector<SignBracket> brackets;
  std::vector<std::size_t> joint_near_zeros;
  std::optional<std::size_t> argmax;      // energy sweeps
  std::optional<std::size_t> argmin_abs;  // condition sweeps

  bool ok(std::size_t i) const { return errors[i].empty(); }
};

namespace detail {

inline PlasmonConfig with_parameter(PlasmonConfig cfg, const std::string& name, double x) {
  if (name == "k") {
    cfg.k = x;
  } else if (name == "delta") {
    cfg.delta = x;
  } else {
    throw Error(ErrorKind::invalid_argument, "sweep parameter must be \"k\" or \"delta\"");
  }
  return cfg;
}

struct PointValue {
  cdouble value;
  double raw_log_magnitude = 0.0;
};

inline PointValue evaluate_condition(SweepTarget target, const PlasmonConfig& c, int n0, bool extended) {
  PointValue out;
  auto take = [&](const auto& v) {
    out.value = num::to_cdouble(v.normalized);
    out.raw_log_magnitude = num::to_double(v.raw.log_magnitude());
  };
  if (target == SweepTarget::condition_nocore) {
    detail::require(c.dim == 2 || c.dim == 3, "dim must be 2 or 3");
    if (extended)
      take(condition_lhs_nocore_t<mp::real>(c.dim, n0, mp::real(c.k), mp::real(c.r_e), mp::real(c.eps_s),
                                            mp::real(c.delta)));
    else
      take(condition_lhs_nocore_t<double>(c.dim, n0, c.k, c.r_e, c.eps_s, c.delta));
  } else if (target == SweepTarget::condition_coreshell) {
    validate(c);
    if (extended)
      take(condition_lhs_coreshell_t<mp::real>(c.dim, n0, mp::real(c.k), mp::real(c.r_i), mp::real(c.r_e),
                                               mp::real(c.eps_c), mp::real(c.eps_s), mp::real(c.delta)));
    else
      take(condition_lhs_coreshell_t<double>(c.dim, n0, c.k, c.r_i, c.r_e, c.eps_c, c.eps_s, c.delta));
  } else {
    auto raw = extended ? denominator_residual_scaled<mp::real>(c.dim, n0, mp::real(c.eps_s), mp::real(c.delta),
                                                                mp::real(c.k), mp::real(c.r_e))
                                .to_double()
                        : denominator_residual_scaled<double>(c.dim, n0, c.eps_s, c.delta, c.k, c.r_e);
    out.value = raw.to_complex();
    out.raw_log_magnitude = raw.log_magnitude();
  }
  return out;
}

inline bool significant(double part, cdouble v, double floor) { return std::abs(part) > floor * std::abs(v); }

}  // namespace detail

/// Evaluates the requested quantity on every grid point. Point failures are
/// recorded in `errors` and never abort the sweep.
inline ResidualCurve sweep(const SweepRequest& req) {
  detail::require(!req.grid.empty(), "sweep: grid must be nonempty");
  for (std::size_t i = 1; i < req.grid.size(); ++i)
    detail::require(req.grid[i] > req.grid[i - 1], "sweep: grid must be strictly increasing");
  detail::require(req.parameter == "k" || req.parameter == "delta", "sweep parameter must be \"k\" or \"delta\"");
  ResidualCurve curve;
  curve.parameter_name = req.parameter;
  curve.target = req.target;
  curve.grid = req.grid;
  curve.config = req.config;
  curve.n0 = req.n0;
  const std::size_t n = req.grid.size();
  curve.values.assign(n, cdouble(0.0));
  curve.raw_log_magnitude.assign(n, 0.0);
  curve.energies.assign(n, 0.0);
  curve.errors.assign(n, std::string());
  const bool energy = req.target == SweepTarget::energy;

  parallel_for(n, req.jobs, [&](std::size_t i) {
    try {
      PlasmonConfig c = detail::with_parameter(req.config, req.parameter, req.grid[i]);
      if (energy) {
        EnergyOptions opt;
        opt.crosscheck = req.energy_crosscheck;
        curve.energies[i] = dissipation_energy(solve(c, req.source), opt).total;
      } else {
        auto v = detail::evaluate_condition(req.target, c, req.n0, req.extended_precision);
        curve.values[i] = v.value;
        curve.raw_log_magnitude[i] = v.raw_log_magnitude;
      }
    } catch (const std::exception& e) {
      curve.errors[i] = e.what();
    }
  });

  if (energy) {
    for (std::size_t i = 0; i < n; ++i)
      if (curve.ok(i) && (!curve.argmax || curve.energies[i] > curve.energies[*curve.argmax])) curve.argmax = i;
    return curve;
  }
  const double floor = req.noise_floor.value_or(req.extended_precision ? 1e-60 : 1e-13);
  for (std::size_t i = 0; i < n; ++i) {
    if (!curve.ok(i)) continue;
    const cdouble v = curve.values[i];
    if (!curve.argmin_abs || std::abs(v) < std::abs(curve.values[*curve.argmin_abs])) curve.argmin_abs = i;
    if (std::abs(v) < req.near_zero) curve.joint_near_zeros.push_back(i);
    if (i + 1 >= n || !curve.ok(i + 1)) continue;
    const cdouble w = curve.values[i + 1];
    if (v.real() * w.real() < 0.0 && detail::significant(v.real(), v, floor) &&
        detail::significant(w.real(), w, floor))
      curve.brackets.push_back({i, curve.grid[i], curve.grid[i + 1], false});
    if (v.imag() * w.imag() < 0.0 && detail::significant(v.imag(), v, floor) &&
        detail::significant(w.imag(), w, floor))
      curve.brackets.push_back({i, curve.grid[i], curve.grid[i + 1], true});
  }
  return curve;
}

struct RefinedRoot {
  double x = 0.0;
  cdouble value;
  int iterations = 0;
};

/// Bisection on the real or imaginary part of a condition sweep inside one
/// bracket, until the bracket width is below tol * max(1, |x|).
inline RefinedRoot refine_bracket(const SweepRequest& req, const SignBracket& b, double tol = 1e-10) {
  detail::require(req.target != SweepTarget::energy, "refine_bracket: condition sweeps only");
  auto part = [&](double x) {
    auto v = detail::evaluate_condition(req.target, detail::with_parameter(req.config, req.parameter, x), req.n0,
                                        req.extended_precision)
                 .value;
    return b.imaginary ? v.imag() : v.real();
  };
  double lo = b.lo, hi = b.hi;
  double flo = part(lo);
  RefinedRoot out;
  while (hi - lo > tol * std::max(1.0, std::abs(lo)) && out.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    const double fm = part(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.x = 0.5 * (lo + hi);
  out.value = detail::evaluate_condition(req.target, detail::with_parameter(req.config, req.parameter, out.x), req.n0,
                                         req.extended_precision)
                  .value;
  return out;
}

/// n points spaced evenly in log10 between lo and hi (inclusive).
inline std::vector<double> log_grid(double lo, double hi, int n) {
  detail::require(lo > 0.0 && hi > lo && n >= 2, "log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, int n) {
  detail::require(hi > lo && n >= 2, "linear_grid: need lo < hi and n >= 2");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

}  // namespace alr
