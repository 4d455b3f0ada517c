#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "alr/error.hpp"

namespace alr {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  unsigned max_depth = 10;
  int max_panels = 64;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]. The value type follows the
/// integrand (real or complex). When the error estimate stays above
/// max(rel_tol * L1, abs_tol) the interval is split into 2, 4, ... equal
/// panels. A level is also accepted when it agrees with the previous level
/// to the same tolerance, which covers integrands whose rounding noise
/// swamps the Kronrod estimate. After max_panels the call throws
/// quadrature_failure.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}, std::optional<int> mode = std::nullopt) {
  using boost::math::quadrature::gauss_kronrod;
  using Value = decltype(gauss_kronrod<double, 15>::integrate(f, a, b, opt.max_depth, opt.rel_tol));
  std::optional<Value> previous;
  for (int panels = 1; panels <= opt.max_panels; panels *= 2) {
    const double h = (b - a) / panels;
    Value value{};
    double err = 0.0;
    double l1 = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      const double hi = p + 1 == panels ? b : lo + h;
      double e = 0.0, l = 0.0;
      value += gauss_kronrod<double, 15>::integrate(f, lo, hi, opt.max_depth, opt.rel_tol, &e, &l);
      err += e;
      l1 += l;
    }
    if (!std::isfinite(l1)) break;
    const double tol = std::max(opt.rel_tol * l1, opt.abs_tol);
    if (err <= tol) return value;
    if (previous && std::abs(value - *previous) <= tol) return value;
    previous = value;
  }
  throw Error(ErrorKind::quadrature_failure, "quadrature failure", mode);
}

/// Gauss-Legendre rule with n points on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  detail::require(n >= 1, "gauss_legendre: need at least one point");
  GaussRule rule;
  auto zeros = boost::math::legendre_p_zeros<double>(n);  // non-negative zeros, ascending
  auto add = [&](double x) {
    double dp = boost::math::legendre_p_prime(n, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
    if (*it != 0.0) add(-*it);
  for (double x : zeros) add(x);
  return rule;
}

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels.
inline GaussRule composite_gauss(const GaussRule& base, double a, double b, int panels) {
  GaussRule out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      out.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
      out.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return out;
}

/// Legendre P_0..P_n at x by the three-term recurrence.
inline std::vector<double> legendre_all(int n, double x) {
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (int l = 1; l < n; ++l) p[l + 1] = ((2.0 * l + 1.0) * x * p[l] - l * p[l - 1]) / (l + 1.0);
  return p;
}

}  // namespace alr
