// Canonical equilibrium objects built from a discrete spectrum.
#pragma once

#include <cstddef>
#include <vector>

#include "thermorelax/numerics.hpp"
#include "thermorelax/spectrum.hpp"

namespace thermorelax {

/// Raised when too few eigenstates were supplied to resolve a thermal sum.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTruncationTolerance = 1e-8;

struct CanonicalEnsemble {
  Spectrum spectrum;
  double beta = 1.0;
  double partition = 1.0;        ///< Z = sum_n exp(-beta E_n)
  std::vector<double> weights;   ///< exp(-beta E_n) / Z, non-increasing
  double truncation_bound = 0.0; ///< estimated probability carried by omitted states
};

/// Z over the supplied levels. Throws TruncationError when the estimated tail
/// mass k * w_{k-1} exceeds `tolerance` (ignored for complete spectra).
double partition_function(const Spectrum& spectrum, double beta,
                          double tolerance = kDefaultTruncationTolerance);

CanonicalEnsemble make_ensemble(Spectrum spectrum, double beta,
                                double tolerance = kDefaultTruncationTolerance);

/// Non-negative probability density with a time stamp.
struct DensityField {
  Field rho;
  double time = 0.0;

  const Grid1D& grid() const { return rho.grid(); }
};

struct DensityField2D {
  Field2D rho;
  double time = 0.0;

  const Grid2D& grid() const { return rho.grid(); }
};

/// rho_e(a) = sum_n w_n phi_n(a)^2
DensityField gibbs_density(const CanonicalEnsemble& ensemble);

/// rho_e(q, p) = sum_n w_n phi_n(q)^2 chi_n(p)^2 for position states phi_n and
/// momentum states chi_n of the same system. Throws std::invalid_argument
/// ("spectra mismatch") when paired energies differ by more than 1e-3.
DensityField2D phase_space_gibbs(const Spectrum& spec_q, const Spectrum& spec_p, double beta,
                                 double tolerance = kDefaultTruncationTolerance);

/// Single-state factor w * phi(q)^2 * chi(p)^2 of the phase-space density.
Field2D phase_space_term(const Field& phi_q, const Field& chi_p, double weight);

struct ThermalForce {
  Field force;                ///< -k_B T d/da ln max(rho, floor)
  std::size_t clamped_nodes = 0;
};

inline constexpr double kDefaultLogFloorFraction = 1e-30;

/// Default log clamp: kDefaultLogFloorFraction * max(rho).
double default_log_floor(std::span<const double> rho);

ThermalForce thermal_force(const DensityField& rho, double temperature, double floor);
ThermalForce thermal_force(const DensityField& rho, double temperature);

/// integral of rho * q^i (1D; p_power must be 0).
double density_moment(const DensityField& rho, int q_power, int p_power = 0);
/// integral of rho * q^i * p^j over phase space.
double density_moment(const DensityField2D& rho, int q_power, int p_power);

/// Marginals of a phase-space density.
Field marginal_q(const Field2D& rho);
Field marginal_p(const Field2D& rho);

/// Variance of the coordinate under a 1D density.
double variance(const DensityField& rho);

}  // namespace thermorelax
