#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "thermorelax/oracles.hpp"

using namespace trtest;

TEST_CASE("free-gas moments oracle") {
  const OUParams p{1.0, 1.0, 1.0, 2.0, 1.0};
  CHECK(ou_analytic_moments(p, 0.0).mean == 2.0);
  CHECK(ou_analytic_moments(p, 0.0).variance == 1.0);
  CHECK(ou_analytic_moments(p, 1.0).mean == doctest::Approx(0.735759).epsilon(1e-6));

  const OUParams stationary{0.7, 2.0, 1.5, -1.0, 3.0};
  for (double t : {0.0, 0.3, 5.0, 100.0}) CHECK(ou_analytic_moments(stationary, t).variance == doctest::Approx(3.0));

  CHECK_THROWS_AS(ou_analytic_moments(p, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ou_analytic_moments(OUParams{0.0, 1.0, 1.0, 0.0, 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("oracle satisfies its moment equations") {
  const OUParams p{0.8, 1.7, 0.6, 1.3, 0.2};
  const double rate = p.friction / p.mass;
  const double eps = 1e-5;
  for (double t : {0.0, 0.4, 1.0, 3.0}) {
    const double t0 = std::max(t, eps);
    const Moments plus = ou_analytic_moments(p, t0 + eps);
    const Moments minus = ou_analytic_moments(p, t0 - eps);
    const Moments here = ou_analytic_moments(p, t0);
    const double dmean = (plus.mean - minus.mean) / (2.0 * eps);
    const double dvar = (plus.variance - minus.variance) / (2.0 * eps);
    CHECK(std::fabs(dmean + rate * here.mean) < 1e-6);
    CHECK(std::fabs(dvar - (-2.0 * rate * here.variance + 2.0 * p.temperature * p.friction)) < 1e-6);
  }
}

TEST_CASE("analytic ground state") {
  const Grid1D g = build_grid(-12.0, 12.0, 2001);
  const Field phi = analytic_ground_state(g, 1.0, 1.0, 1.0);
  Field sq(g);
  for (std::size_t i = 0; i < g.n; ++i) sq[i] = phi[i] * phi[i];
  CHECK(std::fabs(integrate(sq) - 1.0) < 1e-9);
  CHECK(variance(DensityField{sq, 0.0}) == doctest::Approx(0.5).epsilon(1e-8));

  const Spectrum s = solve_spectrum(unit_oscillator(), 1);
  CHECK(max_abs_diff(phi.values(), s.states[0].values()) < 1e-4);
  CHECK_THROWS_AS(analytic_ground_state(g, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("stationarity residual") {
  const HamiltonianMatrix h = unit_oscillator(401, 8.0);
  const KineticCoefficients coeff{1.0, 1.0, {}};

  const DensityField ref = gibbs_density(make_ensemble(solve_spectrum(h, 40), 2.0));
  CHECK(stationarity_residual(ref, canonical_backend(ref, 0.5), coeff, Space::position) <
        1e-12 * max_abs(ref.rho.values()));

  const double kt = 0.5;
  const DensityField boltz =
      normalized(DensityField{Field::sample(h.grid, [&](double q) { return std::exp(-0.5 * q * q / kt); }), 0.0});
  const FreeEnergyBackend classical = classical_backend(harmonic_energy(h.grid), kt);
  CHECK(stationarity_residual(boltz, classical, coeff, Space::position) < 1e-8);

  const DensityField shifted = gaussian(h.grid, 1.0, kt);
  CHECK(stationarity_residual(shifted, classical, coeff, Space::position) > 1e-3);
}
