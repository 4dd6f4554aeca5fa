#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace trtest;

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }

// Wide box so the classical end of the sweep (variance 10) is resolved.
const Spectrum& wide_spectrum() {
  static const Spectrum s = solve_spectrum(unit_oscillator(2001, 30.0), 400);
  return s;
}

const Spectrum& narrow_spectrum() {
  static const Spectrum s = solve_spectrum(unit_oscillator(), 40);
  return s;
}

Spectrum levels_only(std::vector<double> energies) {
  Spectrum s;
  s.energies = std::move(energies);
  s.complete = true;
  return s;
}

}  // namespace

TEST_CASE("partition function") {
  CHECK(std::fabs(partition_function(narrow_spectrum(), 2.0) - 1.0 / (2.0 * std::sinh(1.0))) < 1e-4);
  CHECK(partition_function(narrow_spectrum(), 2.0) == doctest::Approx(0.425459).epsilon(1e-4));

  const double e0 = narrow_spectrum().energies[0];
  CHECK(std::fabs(partition_function(narrow_spectrum(), 50.0) / std::exp(-50.0 * e0) - 1.0) < 1e-6);

  CHECK(partition_function(levels_only({0.0, 1.0}), 1.0) == doctest::Approx(1.0 + std::exp(-1.0)).epsilon(1e-15));
  CHECK(std::fabs(partition_function(levels_only({0.0, 1.0}), 1.0) - 1.367879) < 1e-6);
}

TEST_CASE("partition function refuses an unresolved tail") {
  const Spectrum few = solve_spectrum(unit_oscillator(401), 3);
  CHECK_THROWS_AS(partition_function(few, 0.1), TruncationError);
  CHECK_NOTHROW(partition_function(few, 50.0));
  CHECK_THROWS_AS(partition_function(few, 0.0), std::invalid_argument);
}

TEST_CASE("gibbs density") {
  SUBCASE("cold limit is the ground state") {
    const Spectrum& s = narrow_spectrum();
    const DensityField rho = gibbs_density(make_ensemble(s, 50.0));
    double diff = 0.0;
    for (std::size_t i = 0; i < rho.rho.size(); ++i) {
      diff = std::max(diff, std::fabs(rho.rho[i] - s.states[0][i] * s.states[0][i]));
    }
    CHECK(diff < 1e-6);
  }
  SUBCASE("coth variance") {
    CHECK(std::fabs(variance(gibbs_density(make_ensemble(narrow_spectrum(), 2.0))) / 0.656518 - 1.0) < 5e-3);
    CHECK(std::fabs(variance(gibbs_density(make_ensemble(wide_spectrum(), 0.1))) / 10.0 - 1.0) < 1e-2);
  }
  SUBCASE("valid density across a temperature sweep") {
    for (double beta : {0.1, 0.5, 1.0, 2.0, 10.0, 50.0}) {
      const DensityField rho = gibbs_density(make_ensemble(wide_spectrum(), beta));
      double lo = 0.0;
      for (double v : rho.rho.values()) lo = std::min(lo, v);
      CHECK(lo >= 0.0);
      CHECK(std::fabs(integrate(rho.rho) - 1.0) < 1e-8);
      CHECK(std::fabs(variance(rho) / (0.5 * coth(0.5 * beta)) - 1.0) < 5e-3);
    }
  }
}

TEST_CASE("weights are invariant under energy and temperature rescaling") {
  const Spectrum& s = narrow_spectrum();
  const CanonicalEnsemble base = make_ensemble(s, 2.0);
  for (double c : {0.25, 3.0, 40.0}) {
    Spectrum scaled = s;
    for (double& e : scaled.energies) e *= c;
    const CanonicalEnsemble e = make_ensemble(scaled, 2.0 / c);
    for (std::size_t n = 0; n < base.weights.size(); ++n) {
      CHECK(e.weights[n] == doctest::Approx(base.weights[n]).epsilon(1e-12));
    }
  }
}

TEST_CASE("thermal force") {
  const Grid1D g = build_grid(-8.0, 8.0, 801);

  SUBCASE("gaussian") {
    const double var = 1.7;
    const double kt = 0.8;
    const ThermalForce f = thermal_force(gaussian(g, 0.0, var), kt);
    CHECK(f.clamped_nodes == 0);
    for (std::size_t i = 1; i + 1 < g.n; ++i) CHECK(std::fabs(f.force[i] - kt * g.node(i) / var) < 1e-9);
  }
  SUBCASE("uniform") {
    const ThermalForce f = thermal_force(DensityField{Field::sample(g, [](double) { return 1.0 / 16.0; }), 0.0}, 2.0);
    CHECK(max_abs(f.force.values()) < 1e-12);
  }
  SUBCASE("classical gibbs recovers the mechanical force") {
    const double kt = 0.6;
    const auto u = [](double x) { return 0.25 * x * x * x * x - x * x; };
    const auto du = [](double x) { return x * x * x - 2.0 * x; };
    const Field rho = Field::sample(g, [&](double x) { return std::exp(-u(x) / kt); });
    const ThermalForce f = thermal_force(DensityField{rho, 0.0}, kt);
    double err = 0.0;
    // Only where the stencil sees no clamped neighbour.
    const double floor = default_log_floor(rho.values());
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
      if (rho[i - 1] >= floor && rho[i + 1] >= floor) err = std::max(err, std::fabs(f.force[i] - du(g.node(i))));
    }
    CHECK(err < 1e-2);
  }
  SUBCASE("clamped nodes are reported") {
    Field rho = gaussian(g, 0.0, 1.0).rho;
    rho[0] = 0.0;
    rho[1] = 0.0;
    CHECK(thermal_force(DensityField{rho, 0.0}, 1.0).clamped_nodes == 2);
    CHECK_THROWS_AS(thermal_force(DensityField{rho, 0.0}, 0.0, 1e-30), std::invalid_argument);
  }
}

TEST_CASE("phase-space gibbs density") {
  const Grid1D g = build_grid(-8.0, 8.0, 161);
  const HamiltonianMatrix hq = discretize_position_hamiltonian(g, 1.0, 1.0, HarmonicPotential{});
  const HamiltonianMatrix hp = discretize_momentum_hamiltonian(g, 1.0, 1.0, 1.0);
  const Spectrum sq = solve_spectrum(hq, 40);
  const Spectrum sp = solve_spectrum(hp, 40);

  SUBCASE("marginals reproduce the 1D densities") {
    const DensityField2D rho = phase_space_gibbs(sq, sp, 2.0);
    CHECK(std::fabs(integrate(rho.rho) - 1.0) < 1e-6);
    const DensityField gq = gibbs_density(make_ensemble(sq, 2.0));
    const DensityField gp = gibbs_density(make_ensemble(sp, 2.0));
    CHECK(max_abs_diff(marginal_q(rho.rho).values(), gq.rho.values()) < 1e-6);
    CHECK(max_abs_diff(marginal_p(rho.rho).values(), gp.rho.values()) < 1e-6);
    CHECK(std::fabs(density_moment(rho, 2, 0) / 0.656518 - 1.0) < 5e-3);
    CHECK(std::fabs(density_moment(rho, 0, 2) / 0.656518 - 1.0) < 5e-3);
  }
  SUBCASE("cold limit saturates the uncertainty bound") {
    const DensityField2D rho = phase_space_gibbs(sq, sp, 50.0);
    CHECK(std::fabs(density_moment(rho, 2, 0) * density_moment(rho, 0, 2) / 0.25 - 1.0) < 1e-2);
  }
  SUBCASE("single-state factor") {
    const Field2D term = phase_space_term(sq.states[0], sp.states[0], 0.3);
    for (std::size_t i = 0; i < g.n; i += 7) {
      for (std::size_t j = 0; j < g.n; j += 5) {
        const double a = sq.states[0][i];
        const double b = sp.states[0][j];
        CHECK(term(i, j) == doctest::Approx(0.3 * (a * a) * (b * b)).epsilon(1e-15));
      }
    }
  }
  SUBCASE("mismatched systems are rejected") {
    const Spectrum other = solve_spectrum(discretize_momentum_hamiltonian(g, 1.0, 1.0, 1.5), 40);
    CHECK_THROWS_WITH_AS(phase_space_gibbs(sq, other, 2.0), doctest::Contains("spectra mismatch"),
                         std::invalid_argument);
  }
}

TEST_CASE("density moments") {
  const Grid1D g = build_grid(-10.0, 10.0, 1001);
  const DensityField rho = gaussian(g, 0.0, 2.0);
  CHECK(std::fabs(density_moment(rho, 0) - 1.0) < 1e-8);
  CHECK(std::fabs(density_moment(rho, 1)) < 1e-8);
  CHECK(density_moment(rho, 2) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(density_moment(rho, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(density_moment(rho, -1), std::invalid_argument);
}
