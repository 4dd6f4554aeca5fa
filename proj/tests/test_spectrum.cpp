#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"

using namespace trtest;

TEST_CASE("harmonic levels in position space") {
  const Spectrum s = solve_spectrum(unit_oscillator(), 10);
  REQUIRE(s.count() == 10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(std::fabs(s.energies[n] - (n + 0.5)) < 1e-3);
  for (std::size_t n = 0; n + 1 < 10; ++n) CHECK(std::fabs(s.energies[n + 1] - s.energies[n] - 1.0) < 1e-3);
}

TEST_CASE("particle in a box") {
  // The walls sit one spacing beyond the end nodes, so the nodes are the
  // interior points of [0, L].
  const double length = 1.0;
  const std::size_t n = 2001;
  const double h = length / static_cast<double>(n + 1);
  const Grid1D g = build_grid(h, length - h, n);
  const Spectrum s = solve_spectrum(discretize_position_hamiltonian(g, 1.0, 1.0, FreePotential{}), 5);
  for (std::size_t k = 1; k <= 5; ++k) {
    const double exact = 0.5 * std::pow(k * std::numbers::pi / length, 2);
    CHECK(std::fabs(s.energies[k - 1] / exact - 1.0) < 1e-3);
  }
}

TEST_CASE("tabulated zero potential equals the free particle bit for bit") {
  const Grid1D g = build_grid(-3.0, 3.0, 101);
  const HamiltonianMatrix free = discretize_position_hamiltonian(g, 1.3, 0.7, FreePotential{});
  const HamiltonianMatrix tab = discretize_position_hamiltonian(g, 1.3, 0.7, TabulatedPotential{Field(g)});
  CHECK(free.diag == tab.diag);
  CHECK(free.offdiag == tab.offdiag);
  CHECK(solve_spectrum(free, 4).energies == solve_spectrum(tab, 4).energies);
}

TEST_CASE("hamiltonian construction rejects bad parameters") {
  const Grid1D g = build_grid(-3.0, 3.0, 11);
  CHECK_THROWS_AS(discretize_position_hamiltonian(g, 0.0, 1.0, FreePotential{}), std::invalid_argument);
  CHECK_THROWS_AS(discretize_position_hamiltonian(g, 1.0, -1.0, FreePotential{}), std::invalid_argument);
  CHECK_THROWS_AS(discretize_position_hamiltonian(g, 1.0, 1.0, HarmonicPotential{1.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize_momentum_hamiltonian(g, 1.0, 1.0, QuarticDoubleWell{}), std::invalid_argument);
  CHECK_THROWS_AS(discretize_momentum_hamiltonian(g, 1.0, 1.0, TabulatedPotential{Field(g)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize_momentum_hamiltonian(g, 1.0, 1.0, -1.0), std::invalid_argument);
  const Grid1D other = build_grid(-3.0, 3.0, 12);
  CHECK_THROWS_AS(discretize_position_hamiltonian(g, 1.0, 1.0, TabulatedPotential{Field(other)}),
                  std::invalid_argument);
}

TEST_CASE("momentum representation") {
  SUBCASE("free gas is diagonal") {
    const Grid1D g = build_grid(-4.0, 4.0, 9);
    const HamiltonianMatrix h = discretize_momentum_hamiltonian(g, 2.0, 1.0, 0.0);
    for (std::size_t i = 0; i < g.n; ++i) CHECK(h.diag[i] == doctest::Approx(g.node(i) * g.node(i) / 4.0));
    for (double v : h.offdiag) CHECK(v == 0.0);

    const Spectrum s = solve_spectrum(h, 1);
    CHECK(s.energies[0] == 0.0);
    for (std::size_t i = 0; i < g.n; ++i) {
      if (i == 4) {
        CHECK(s.states[0][i] == doctest::Approx(1.0 / std::sqrt(g.h)));
      } else {
        CHECK(std::fabs(s.states[0][i]) < 1e-12);
      }
    }
  }
  SUBCASE("unit oscillator matches the position spectrum") {
    const Grid1D g = build_grid(-12.0, 12.0, 2001);
    const Spectrum p = solve_spectrum(discretize_momentum_hamiltonian(g, 1.0, 1.0, 1.0), 10);
    const Spectrum q = solve_spectrum(unit_oscillator(), 10);
    for (std::size_t n = 0; n < 10; ++n) CHECK(std::fabs(p.energies[n] - q.energies[n]) < 1e-3);
  }
  SUBCASE("ground level is mass independent") {
    const Grid1D g = build_grid(-12.0, 12.0, 2001);
    const Spectrum s = solve_spectrum(discretize_momentum_hamiltonian(g, 2.0, 1.0, 1.0), 1);
    CHECK(std::fabs(s.energies[0] - 0.5) < 1e-3);
  }
}

TEST_CASE("eigenpairs: parity, residual, orthonormality") {
  const HamiltonianMatrix h = unit_oscillator(801);
  const Spectrum s = solve_spectrum(h, 12);
  const std::size_t n = h.grid.n;
  const std::size_t mid = n / 2;

  for (std::size_t k = 0; k < s.count(); ++k) {
    const Field& phi = s.states[k];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) asym = std::max(asym, std::fabs(phi[i] - sign * phi[n - 1 - i]));
    CHECK(asym < 1e-8);
    if (k % 2 == 1) CHECK(std::fabs(phi[mid]) < 1e-8);

    const Field hphi = h.apply(phi);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::fabs(hphi[i] - s.energies[k] * phi[i]));
    CHECK(res <= 1e-8 * std::max(1.0, std::fabs(s.energies[k])));

    // First significant component positive.
    for (std::size_t i = 0; i < n; ++i) {
      if (std::fabs(phi[i]) > 1e-8) {
        CHECK(phi[i] > 0.0);
        break;
      }
    }
  }

  double gram = 0.0;
  for (std::size_t a = 0; a < s.count(); ++a) {
    for (std::size_t b = 0; b < s.count(); ++b) {
      Field prod(h.grid);
      for (std::size_t i = 0; i < n; ++i) prod[i] = s.states[a][i] * s.states[b][i];
      gram = std::max(gram, std::fabs(integrate(prod) - (a == b ? 1.0 : 0.0)));
    }
  }
  CHECK(gram <= 1e-8);
}

TEST_CASE("levels converge at second order and stay near the variational bound") {
  const Spectrum coarse = solve_spectrum(unit_oscillator(241), 10);
  const Spectrum fine = solve_spectrum(unit_oscillator(481), 10);
  for (std::size_t n = 0; n < 10; ++n) {
    const double order = std::log2(std::fabs(coarse.energies[n] - (n + 0.5)) / std::fabs(fine.energies[n] - (n + 0.5)));
    CHECK(order >= 1.9);
  }
  for (std::size_t nodes : {241u, 481u, 961u}) {
    const HamiltonianMatrix h = unit_oscillator(nodes);
    CHECK(solve_spectrum(h, 1).energies[0] >= 0.5 - h.grid.h * h.grid.h);
  }
}

TEST_CASE("solver preconditions and iteration cap") {
  const HamiltonianMatrix h = unit_oscillator(101);
  CHECK_THROWS_AS(solve_spectrum(h, 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_spectrum(h, 102), std::invalid_argument);
  EigenOptions starved;
  starved.max_ql_iterations = 0;
  CHECK_THROWS_AS(solve_spectrum(h, 3, starved), NumericalError);

  const std::vector<double> ev = tridiagonal_eigenvalues({2.0, 2.0}, {1.0});
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));
}
