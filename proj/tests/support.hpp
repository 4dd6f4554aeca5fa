// Shared fixtures for the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "thermorelax/equilibrium.hpp"
#include "thermorelax/numerics.hpp"
#include "thermorelax/spectrum.hpp"

namespace trtest {

using namespace thermorelax;

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

/// Normalized Gaussian density with the given mean and variance.
inline DensityField gaussian(const Grid1D& g, double mean, double var) {
  Field f = Field::sample(g, [&](double x) { return std::exp(-0.5 * (x - mean) * (x - mean) / var); });
  const double z = integrate(f);
  for (double& v : f.values()) v /= z;
  return DensityField{std::move(f), 0.0};
}

/// Unit-parameter oscillator on [-12, 12] unless told otherwise.
inline HamiltonianMatrix unit_oscillator(std::size_t n = 2001, double half_width = 12.0) {
  return discretize_position_hamiltonian(build_grid(-half_width, half_width, n), 1.0, 1.0, HarmonicPotential{});
}

inline Field harmonic_energy(const Grid1D& g, double k = 1.0) {
  return Field::sample(g, [k](double x) { return 0.5 * k * x * x; });
}

}  // namespace trtest
