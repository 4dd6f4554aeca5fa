// Free-energy fields F[rho] whose gradient drives relaxation. Three closures
// are provided:
//
//   classical  F = E(a) + kT ln rho
//   bohm       F = rho^{-1/2} (H rho^{1/2}) + kT ln rho
//   canonical  F = kT ln(rho / rho_e)
//
// Every F splits into a "potential part" Phi (everything except kT ln rho)
// and the entropic part; the steppers use that split.
#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "thermorelax/equilibrium.hpp"
#include "thermorelax/numerics.hpp"
#include "thermorelax/spectrum.hpp"

namespace thermorelax {

enum class BackendKind { classical, bohm, canonical };

std::string_view to_string(BackendKind kind);
BackendKind backend_from_string(std::string_view name);

struct ClassicalModel {
  Field energy;  ///< E(a) on the grid: U(q) or p^2/2m
};

struct BohmModel {
  HamiltonianMatrix hamiltonian;
};

struct CanonicalModel {
  Field reference;                  ///< equilibrium density rho_e
  std::vector<double> log_reference;  ///< ln max(rho_e, floor), cached
};

struct FreeEnergyBackend {
  std::variant<ClassicalModel, BohmModel, CanonicalModel> model;
  double temperature = 1.0;  ///< k_B T
  double floor_fraction = kDefaultLogFloorFraction;

  BackendKind kind() const { return static_cast<BackendKind>(model.index()); }
  const Grid1D& grid() const;
};

FreeEnergyBackend classical_backend(Field energy, double temperature);
FreeEnergyBackend bohm_backend(HamiltonianMatrix hamiltonian, double temperature);
FreeEnergyBackend canonical_backend(const DensityField& reference, double temperature);

struct FreeEnergyField {
  Field values;
  BackendKind backend = BackendKind::classical;
  std::size_t clamped_nodes = 0;  ///< nodes where rho was raised to the log floor
};

FreeEnergyField classical_free_energy(const DensityField& rho, const Field& energy, double temperature);
FreeEnergyField bohm_free_energy(const DensityField& rho, const HamiltonianMatrix& h, double temperature);
FreeEnergyField canonical_free_energy(const DensityField& rho, const DensityField& reference,
                                      double temperature);

/// F for any backend.
FreeEnergyField free_energy(const DensityField& rho, const FreeEnergyBackend& backend);

/// Phi = F - kT ln max(rho, floor) on a contiguous slice. `floor` is the
/// absolute clamp applied to rho (Bohm only); `scratch` needs rho.size() entries.
void potential_part(const FreeEnergyBackend& backend, std::span<const double> rho, double floor,
                    std::span<double> out, std::span<double> scratch);

/// Absolute log clamp for rho under this backend.
double log_floor(const FreeEnergyBackend& backend, std::span<const double> rho);

}  // namespace thermorelax
