#include <catch_amalgamated.hpp>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <random>

#include "alr/np_spectrum.hpp"
#include "test_util.hpp"

using namespace alr;
using testutil::rel;

namespace {

const double pi = 3.14159265358979323846;
const double kr_grid[] = {0.1, 0.3, 1.0, 2.5, 5.0, 9.0, 14.0, 20.0};

cdouble jv(int n, double t) { return spherical_j(n, cdouble(t)).value.to_complex(); }

Point random_point(std::mt19937_64& rng, double r_lo, double r_hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = r_lo + (r_hi - r_lo) * u(rng);
  const double c = 2.0 * u(rng) - 1.0, s = std::sqrt(1.0 - c * c), ph = 2.0 * pi * u(rng);
  return {r * s * std::cos(ph), r * s * std::sin(ph), r * c};
}

}  // namespace

TEST_CASE("quasistatic eigenvalues") {
  CHECK(std::abs(np_eigenpair(0, 0.01, 1.0).lambda.real() - 0.5) < 1e-3);
  CHECK(std::abs(np_eigenpair(1, 0.01, 1.0).lambda.real() - 1.0 / 6.0) < 1e-3);
  // |lambda - 1/(2(2m+1))| <= C (kR)^2 with one constant for all m <= 10; the
  // m = 0 expansion gives lambda = 1/2 + (kR)^2/3 + ...
  const double C = 0.5;
  for (int m = 0; m <= 10; ++m)
    for (double t : {1e-4, 1e-3, 1e-2, 0.05, 0.099}) {
      INFO("m " << m << " kR " << t);
      CHECK(std::abs(np_eigenpair(m, t, 1.0).lambda - 1.0 / (2.0 * (2 * m + 1))) < C * t * t);
    }
}

TEST_CASE("two closed forms of the eigenvalue agree") {
  for (int m = 0; m <= 40; ++m)
    for (double t : kr_grid)
      for (double R : {1.0, 2.0}) {
        auto p = np_eigenpair(m, t / R, R);
        INFO("m " << m << " kR " << t);
        CHECK(std::abs(p.lambda - p.lambda_outer) < 1e-11);
      }
}

TEST_CASE("single-layer eigenvalue and Funk-Hecke closed form") {
  const cdouble I(0.0, 1.0);
  for (int m : {0, 1, 7, 25}) {
    for (double t : {0.3, 4.0}) {
      const double R = 1.5, k = t / R;
      auto p = np_eigenpair(m, k, R);
      auto j = spherical_j(m, cdouble(t));
      auto h = spherical_h1(m, cdouble(t));
      CHECK(rel(p.chi, -I * k * R * R * (h.value * j.value).to_complex()) < 1e-12);
      const cdouble direct = 2.0 * t * (h.value * j.derivative + j.value * h.derivative).to_complex() +
                             2.0 * (j.value * h.value).to_complex();
      // The direct form cancels; it is only as good as ~1e-16 / |E| relative.
      CHECK(std::abs(p.funk_hecke - direct) < 1e-13);
    }
  }
  // 40-digit references.
  CHECK(rel(np_eigenpair(29, 0.1, 1.0).funk_hecke, cdouble(1.3822245072664916e-137, -3.8997862613635969e-06)) <
        1e-11);
}

TEST_CASE("Funk-Hecke quadrature") {
  for (int m = 1; m <= 6; ++m) CHECK(std::abs(funk_hecke_quadrature(m, 1e-8, 1.0)) < 1e-6);
  CHECK(std::abs(funk_hecke_quadrature(0, 1e-8, 1.0) - 2.0) < 1e-6);
  CHECK(rel(funk_hecke_quadrature(3, 2.0, 1.0), np_eigenpair(3, 2.0, 1.0).funk_hecke) < 1e-9);
  for (int m = 0; m <= 40; ++m)
    for (double t : kr_grid) {
      INFO("m " << m << " kR " << t);
      CHECK(rel(funk_hecke_quadrature(m, t, 1.0), np_eigenpair(m, t, 1.0).funk_hecke) < 1e-9);
    }
  CHECK_THROWS_AS(funk_hecke_quadrature(-1, 1.0, 1.0), Error);
}

TEST_CASE("interior and exterior single-layer coefficients") {
  const cdouble I(0.0, 1.0);
  for (int m = 0; m <= 40; ++m)
    for (double t : kr_grid) {
      auto p = np_eigenpair(m, t, 1.0);
      const ScaledComplex gj = p.gamma * spherical_j(m, cdouble(t)).value;
      const ScaledComplex ah = p.alpha * spherical_h1(m, cdouble(t)).value;
      INFO("m " << m << " kR " << t);
      CHECK(std::abs(((gj - ah) / gj).to_complex()) < 1e-11);
      // Both reduce to -i kR^2 times h and j respectively.
      CHECK(std::abs((p.gamma / (spherical_h1(m, cdouble(t)).value * (-I * t))).to_complex() - 1.0) < 1e-10);
    }
}

TEST_CASE("assumption check") {
  auto a = check_assumption(1.0, 1.0, 20);
  REQUIRE(a.holds.size() == 21);
  for (bool b : a.holds) CHECK(b);
  // gamma denominator of degree n+1 is kR (j_n - j_{n+2}).
  for (int n = 0; n < 20; ++n)
    CHECK(rel(a.gamma_denominator[n + 1], 1.0 * (jv(n, 1.0) - jv(n + 2, 1.0))) < 1e-12);

  // A root of j_0 = j_2 violates the assumption at degree 0.
  auto f = [](double t) { return (jv(0, t) - jv(2, t)).real(); };
  boost::uintmax_t iters = 200;
  auto root = boost::math::tools::toms748_solve(f, 2.0, 3.0, boost::math::tools::eps_tolerance<double>(53), iters);
  const double t0 = 0.5 * (root.first + root.second);
  auto b = check_assumption(t0, 1.0, 3);
  CHECK_FALSE(b.holds[0]);
  CHECK(b.holds[1]);
  try {
    np_eigenpair(2, t0, 1.0);
    FAIL("expected assumption_violated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::assumption_violated);
    CHECK(e.mode() == 0);
  }
  CHECK_THROWS_AS(np_eigenpair(0, t0, 1.0), Error);

  // Contract coherence on a pseudo-random grid.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 15.0);
  for (int i = 0; i < 40; ++i) {
    const double k = u(rng), R = 1.0 + 0.1 * i;
    auto c = check_assumption(k, R, 12);
    bool ok = true;
    for (int n = 0; n <= 12; ++n) {
      ok = ok && c.holds[n];
      if (ok)
        CHECK_NOTHROW(np_eigenpair(n, k, R));
      else
        CHECK_THROWS_AS(np_eigenpair(n, k, R), Error);
    }
  }
  CHECK_THROWS_AS(np_eigenpair(0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(check_assumption(1.0, 1.0, -1), Error);
}

TEST_CASE("layer-potential identity by surface quadrature") {
  auto r0 = np_identity_residual(1.0, 1.0, {{0, 1.0}});
  CHECK(r0.residual < 1e-6);
  auto r2 = np_identity_residual(0.5, 2.0, {{2, 1.0}});
  CHECK(r2.residual < 1e-6);
  auto z = np_identity_residual(1.0, 1.0, {{0, 0.0}, {3, 0.0}});
  CHECK(z.residual == 0.0);

  // The left side reproduces the spectral action lambda_m Y_m.
  std::map<int, cdouble> dens{{1, cdouble(0.3, -0.2)}, {4, 1.0}};
  auto r = np_identity_residual(1.7, 1.2, dens);
  CHECK(r.residual < 1e-6);
  for (std::size_t i = 0; i < r.polar_angles.size(); ++i) {
    const double x = std::cos(r.polar_angles[i]);
    cdouble expected = 0.0;
    for (const auto& [n, b] : dens)
      expected += np_eigenpair(n, 1.7, 1.2).lambda * b * detail::harmonic_norm(n) * std::legendre(n, x);
    CHECK(std::abs(r.lhs[i] - expected) < 1e-8 * std::abs(expected) + 1e-12);
  }
}

TEST_CASE("layer-potential solve reproduces the series solve") {
  SECTION("transparent configuration") {
    PlasmonConfig cfg;
    cfg.eps_s = 1.0;
    cfg.k = 1.3;
    auto src = point_source_coefficients(3, cfg.k, 2.0, 1.0, 30);
    auto np = solve_nocore_via_np(cfg, src);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      Point p = random_point(rng, 0.05, 0.95);
      CHECK(rel(eval_field(np.solution, p), eval_source(np.solution, p)) < 1e-9);
    }
    CHECK(np.energy.total == 0.0);
  }
  SECTION("tabulated resonance row n0 = 3") {
    PlasmonConfig cfg;
    cfg.eps_s = -1.224395;
    cfg.delta = 0.001203;
    auto np = solve_nocore_via_np(cfg, singleton_source(3, 3, 1.0, 2.0));
    CHECK(np.route_residual < 1e-8);
    CHECK(rel(np.energy.total, np.mie_energy) < 1e-8);
  }
  SECTION("singleton degree 5, eps_s = 2, delta = 0.1") {
    PlasmonConfig cfg;
    cfg.eps_s = 2.0;
    cfg.delta = 0.1;
    auto src = singleton_source(3, 5, 1.0, 3.0);
    auto np = solve_nocore_via_np(cfg, src);
    auto mie = solve_nocore(cfg, src);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      Point p = random_point(rng, 0.05, 2.5);
      CHECK(rel(eval_field(np.solution, p), eval_field(mie, p)) < 1e-8);
    }
  }
  SECTION("randomized configurations") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int c = 0; c < 10; ++c) {
      PlasmonConfig cfg;
      cfg.r_e = 0.5 + u(rng);
      cfg.k = 0.2 + 3.0 * u(rng);
      cfg.eps_s = -3.0 + 5.0 * u(rng);
      cfg.delta = 1e-3 + 0.5 * u(rng);
      auto src = point_source_coefficients(3, cfg.k, cfg.r_e * (1.3 + u(rng)), 1.0, 30);
      auto np = solve_nocore_via_np(cfg, src);
      auto mie = solve_nocore(cfg, src);
      INFO("configuration " << c);
      CHECK(rel(np.energy.total, mie.modes.empty() ? 0.0 : np.mie_energy) < 1e-8);
      for (int i = 0; i < 20; ++i) {
        Point p = random_point(rng, 0.05 * cfg.r_e, 0.99 * src.support_radius);
        CHECK(rel(eval_field(np.solution, p), eval_field(mie, p)) < 1e-8);
      }
    }
  }
  SECTION("preconditions") {
    PlasmonConfig cfg;
    cfg.dim = 2;
    CHECK_THROWS_AS(solve_nocore_via_np(cfg, singleton_source(2, 1, 1.0, 2.0)), Error);
    cfg.dim = 3;
    cfg.r_i = 0.5;
    CHECK_THROWS_AS(solve_nocore_via_np(cfg, singleton_source(3, 1, 1.0, 2.0)), Error);
  }
}
