#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "thermorelax/free_energy.hpp"
#include "thermorelax/relaxation.hpp"

using namespace trtest;

namespace {

// max |dF/dq| over nodes where rho carries more than `cut` of its peak.
double max_gradient(const FreeEnergyField& f, const DensityField& rho, double cut = 1e-10) {
  const Field d = gradient(f.values);
  const double peak = max_abs(rho.rho.values());
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    if (rho.rho[i] > cut * peak) m = std::max(m, std::fabs(d[i]));
  }
  return m;
}

double spread(const Field& f, const DensityField& rho, double cut) {
  const double peak = max_abs(rho.rho.values());
  double lo = 1e300;
  double hi = -1e300;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (rho.rho[i] <= cut * peak) continue;
    lo = std::min(lo, f[i]);
    hi = std::max(hi, f[i]);
  }
  return hi - lo;
}

}  // namespace

TEST_CASE("classical free energy") {
  const Grid1D g = build_grid(-8.0, 8.0, 401);
  const Field e = harmonic_energy(g);

  SUBCASE("flat on the Boltzmann density") {
    const double kt = 0.7;
    const DensityField rho{Field::sample(g, [&](double q) { return std::exp(-0.5 * q * q / kt); }), 0.0};
    const FreeEnergyField f = classical_free_energy(rho, e, kt);
    CHECK(f.clamped_nodes == 0);
    CHECK(spread(f.values, rho, 0.0) < 1e-10);
  }
  SUBCASE("zero temperature returns the energy") {
    const FreeEnergyField f = classical_free_energy(gaussian(g, 0.3, 1.0), e, 0.0);
    for (std::size_t i = 0; i < g.n; ++i) CHECK(f.values[i] == e[i]);
  }
  SUBCASE("stationary gaussian width") {
    const double kt = 0.5;
    CHECK(max_gradient(classical_free_energy(gaussian(g, 0.0, kt), e, kt), gaussian(g, 0.0, kt)) < 1e-8);
    for (double s : {0.4, 0.6}) {
      CHECK(max_gradient(classical_free_energy(gaussian(g, 0.0, s), e, kt), gaussian(g, 0.0, s)) > 1e-2);
    }
  }
}

TEST_CASE("bohm free energy") {
  SUBCASE("ground state is an eigen-identity") {
    const HamiltonianMatrix h = unit_oscillator();
    const Spectrum s = solve_spectrum(h, 1);
    Field rho(h.grid);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = s.states[0][i] * s.states[0][i];
    const FreeEnergyField f = bohm_free_energy(DensityField{rho, 0.0}, h, 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (rho[i] > 1e-10) CHECK(std::fabs(f.values[i] - s.energies[0]) < 1e-6);
    }
  }
  SUBCASE("stationary gaussian width solves the quadratic balance") {
    const double kt = 0.5;
    const double root = (kt + std::sqrt(kt * kt + 1.0)) / 2.0;
    CHECK(root == doctest::Approx(0.809017).epsilon(1e-6));
    CHECK(std::fabs(root * root - kt * root - 0.25) < 1e-14);

    const HamiltonianMatrix h = unit_oscillator(1601, 8.0);
    const double at_root = max_gradient(bohm_free_energy(gaussian(h.grid, 0.0, root), h, kt), gaussian(h.grid, 0.0, root), 1e-8);
    CHECK(at_root < 1e-3);
    for (double u : {0.5, 0.75, 0.87}) {
      const DensityField rho = gaussian(h.grid, 0.0, u);
      CHECK(max_gradient(bohm_free_energy(rho, h, kt), rho, 1e-8) > 20.0 * at_root);
    }
  }
  SUBCASE("vanishing hbar recovers the classical closure") {
    const Grid1D g = build_grid(-8.0, 8.0, 801);
    const DensityField rho = gaussian(g, 0.2, 0.9);
    const FreeEnergyField classical = classical_free_energy(rho, harmonic_energy(g), 0.5);
    std::vector<double> gaps;
    for (double hbar : {1.0, 0.1, 0.01}) {
      const HamiltonianMatrix h = discretize_position_hamiltonian(g, 1.0, hbar, HarmonicPotential{});
      const FreeEnergyField b = bohm_free_energy(rho, h, 0.5);
      double gap = 0.0;
      for (std::size_t i = 1; i + 1 < g.n; ++i) gap = std::max(gap, std::fabs(b.values[i] - classical.values[i]));
      gaps.push_back(gap);
    }
    CHECK(gaps[1] / gaps[0] < 0.02);
    CHECK(gaps[2] / gaps[1] < 0.02);
  }
}

TEST_CASE("canonical free energy") {
  const HamiltonianMatrix h = unit_oscillator(801, 8.0);
  const Spectrum s = solve_spectrum(h, 40);
  const DensityField ref = gibbs_density(make_ensemble(s, 2.0));
  const double kt = 0.5;

  SUBCASE("zero on the reference") {
    const FreeEnergyField f = canonical_free_energy(ref, ref, kt);
    CHECK(max_abs(f.values.values()) == 0.0);
  }
  SUBCASE("coincides with the classical closure on a Boltzmann reference") {
    const Grid1D g = h.grid;
    const DensityField boltz = normalized(DensityField{Field::sample(g, [&](double q) { return std::exp(-0.5 * q * q / kt); }), 0.0});
    const DensityField rho = gaussian(g, 0.4, 0.8);
    const Field a = gradient(canonical_free_energy(rho, boltz, kt).values);
    const Field b = gradient(classical_free_energy(rho, harmonic_energy(g), kt).values);
    CHECK(max_abs_diff(a.values(), b.values()) < 1e-8);
  }
  SUBCASE("restoring force on a shifted reference") {
    const double sigma2 = variance(ref);
    const double d = 5.0 * h.grid.h;
    const DensityField rho = shifted_density(ref, d);
    const Field grad = gradient(canonical_free_energy(rho, ref, kt).values);
    const double centre = grad[h.grid.n / 2];
    CHECK(centre > 0.0);
    CHECK(centre == doctest::Approx(d * kt / sigma2).epsilon(1e-2));
  }
  SUBCASE("reference must be a density") {
    DensityField bad = ref;
    for (double& v : bad.rho.values()) v *= 2.0;
    CHECK_THROWS_AS(canonical_backend(bad, kt), std::invalid_argument);
  }
}

TEST_CASE("free-energy gradients ignore the density scale") {
  // The hard wall gives the Bohm term |grad F| ~ 1/h^3 at the end nodes, so
  // the absolute roundoff floor depends on resolution.
  const HamiltonianMatrix h = unit_oscillator(401, 8.0);
  const DensityField ref = gibbs_density(make_ensemble(solve_spectrum(h, 40), 2.0));
  const DensityField rho = gaussian(h.grid, 0.3, 0.7);
  const FreeEnergyBackend backends[] = {classical_backend(harmonic_energy(h.grid), 0.5), bohm_backend(h, 0.5),
                                        canonical_backend(ref, 0.5)};
  for (const FreeEnergyBackend& be : backends) {
    for (double c : {1e-3, 7.0}) {
      DensityField scaled = rho;
      for (double& v : scaled.rho.values()) v *= c;
      const Field a = gradient(free_energy(rho, be).values);
      const Field b = gradient(free_energy(scaled, be).values);
      CHECK(max_abs_diff(a.values(), b.values()) < 1e-10);
    }
  }
}

TEST_CASE("lyapunov functional is minimised at each backend's stationary width") {
  const HamiltonianMatrix h = unit_oscillator(801, 9.0);
  const double kt = 0.5;
  const DensityField ref = gibbs_density(make_ensemble(solve_spectrum(h, 40), 1.0 / kt));
  const struct {
    FreeEnergyBackend backend;
    double width;
  } cases[] = {
      {classical_backend(harmonic_energy(h.grid), kt), kt},
      {bohm_backend(h, kt), (kt + std::sqrt(kt * kt + 1.0)) / 2.0},
      {canonical_backend(ref, kt), variance(ref)},
  };
  for (const auto& c : cases) {
    const auto value = [&](double u) {
      return lyapunov_functional(RelaxationState{gaussian(h.grid, 0.0, u), Space::position, 0}, c.backend);
    };
    const double best = value(c.width);
    for (double f : {0.9, 0.97, 1.03, 1.1}) CHECK(value(f * c.width) > best);
  }
}

TEST_CASE("backend names") {
  for (BackendKind k : {BackendKind::classical, BackendKind::bohm, BackendKind::canonical}) {
    CHECK(backend_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(backend_from_string("wigner"), std::invalid_argument);
}
