// Discretized Hamiltonians in position and momentum representation and the
// symmetric tridiagonal eigensolver that produces {E_n, phi_n}.
#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "thermorelax/numerics.hpp"

namespace thermorelax {

struct FreePotential {};

/// U(q) = m w^2 q^2 / 2 - f q
struct HarmonicPotential {
  double mass = 1.0;
  double omega = 1.0;
  double force = 0.0;
};

/// U(q) = a4 q^4 - a2 q^2
struct QuarticDoubleWell {
  double a2 = 1.0;
  double a4 = 0.25;
};

/// Potential values given directly on the grid nodes.
struct TabulatedPotential {
  Field values;
};

using PotentialSpec = std::variant<FreePotential, HarmonicPotential, QuarticDoubleWell, TabulatedPotential>;

/// Throws std::invalid_argument on non-positive mass/omega or non-finite parameters.
void validate(const PotentialSpec& potential);

/// Potential sampled on the grid. Tabulated potentials must live on the same grid.
Field sample_potential(const PotentialSpec& potential, const Grid1D& grid);

enum class Representation { position, momentum };

/// Symmetric tridiagonal matrix; offdiag[i] couples nodes i and i+1.
struct HamiltonianMatrix {
  Grid1D grid;
  Representation representation = Representation::position;
  std::vector<double> diag;
  std::vector<double> offdiag;
  double mass = 1.0;
  double hbar = 1.0;

  /// out = H v, with v = 0 beyond the grid.
  void apply(std::span<const double> v, std::span<double> out) const;
  Field apply(const Field& v) const;

  /// Prefactor c of the discrete -c d^2 term (hbar^2/2m in position space).
  double kinetic_prefactor() const;
};

/// diag_i = hbar^2/(m h^2) + U(q_i), offdiag = -hbar^2/(2 m h^2), hard walls one
/// spacing beyond both ends.
HamiltonianMatrix discretize_position_hamiltonian(const Grid1D& grid, double mass, double hbar,
                                                  const PotentialSpec& potential);

/// Harmonic oscillator in momentum space, H = p^2/2m - (m w^2 hbar^2/2) d^2/dp^2.
/// omega = 0 gives the free gas (diagonal matrix).
HamiltonianMatrix discretize_momentum_hamiltonian(const Grid1D& grid, double mass, double hbar,
                                                  double omega);

/// Potential kinds with no local momentum-space form are rejected.
HamiltonianMatrix discretize_momentum_hamiltonian(const Grid1D& grid, double mass, double hbar,
                                                  const PotentialSpec& potential);

struct Spectrum {
  std::vector<double> energies;  ///< ascending
  std::vector<Field> states;     ///< trapezoid-normalized, first significant entry positive
  /// True when every eigenpair of the underlying operator is present, so
  /// thermal sums over the spectrum have no truncation tail.
  bool complete = false;

  std::size_t count() const { return energies.size(); }
};

struct EigenOptions {
  int max_ql_iterations = 60;          ///< per eigenvalue
  int max_inverse_iterations = 8;      ///< per eigenvector
  double residual_tolerance = 1e-10;   ///< relative to max(1, |E|)
};

/// Lowest k eigenpairs. Throws NumericalError when the QL sweep or inverse
/// iteration exceeds its iteration cap.
Spectrum solve_spectrum(const HamiltonianMatrix& h, std::size_t k, const EigenOptions& options = {});

/// All eigenvalues of a symmetric tridiagonal matrix, ascending (implicit-shift QL).
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag,
                                            int max_iterations = 60);

}  // namespace thermorelax
