#include "thermorelax/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace thermorelax {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::classical:
      return "classical";
    case BackendKind::bohm:
      return "bohm";
    case BackendKind::canonical:
      return "canonical";
  }
  return "unknown";
}

BackendKind backend_from_string(std::string_view name) {
  if (name == "classical") return BackendKind::classical;
  if (name == "bohm") return BackendKind::bohm;
  if (name == "canonical") return BackendKind::canonical;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

const Grid1D& FreeEnergyBackend::grid() const {
  return std::visit(
      [](const auto& m) -> const Grid1D& {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ClassicalModel>) return m.energy.grid();
        else if constexpr (std::is_same_v<T, BohmModel>) return m.hamiltonian.grid;
        else return m.reference.grid();
      },
      model);
}

namespace {

void require_temperature(double t, bool allow_zero) {
  if (!std::isfinite(t) || t < 0.0 || (!allow_zero && t == 0.0)) {
    throw std::invalid_argument("temperature must be positive");
  }
}

void require_same_grid(const Grid1D& a, const Grid1D& b) {
  if (!(a == b)) throw std::invalid_argument("free-energy inputs live on different grids");
}

double max_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double floor_for(std::span<const double> rho, double fraction) {
  const double m = max_of(rho);
  return m > 0.0 ? fraction * m : std::numeric_limits<double>::min();
}

// Adds kT ln max(rho, floor) to phi, counting clamped nodes.
std::size_t add_entropic(std::span<const double> rho, double temperature, double floor,
                         std::span<double> phi) {
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] < floor) ++clamped;
    if (temperature != 0.0) phi[i] += temperature * std::log(std::max(rho[i], floor));
  }
  return clamped;
}

void bohm_potential(const HamiltonianMatrix& h, std::span<const double> rho, double floor,
                    std::span<double> out, std::span<double> amplitude) {
  for (std::size_t i = 0; i < rho.size(); ++i) amplitude[i] = std::sqrt(std::max(rho[i], floor));
  h.apply(amplitude, out);
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] /= amplitude[i];
}

}  // namespace

FreeEnergyBackend classical_backend(Field energy, double temperature) {
  require_temperature(temperature, true);
  return FreeEnergyBackend{ClassicalModel{std::move(energy)}, temperature};
}

FreeEnergyBackend bohm_backend(HamiltonianMatrix hamiltonian, double temperature) {
  require_temperature(temperature, true);
  return FreeEnergyBackend{BohmModel{std::move(hamiltonian)}, temperature};
}

FreeEnergyBackend canonical_backend(const DensityField& reference, double temperature) {
  require_temperature(temperature, false);
  const double mass = integrate(reference.rho);
  if (!(std::fabs(mass - 1.0) < 1e-6)) {
    throw std::invalid_argument("canonical reference density is not normalized");
  }
  for (double v : reference.rho.values()) {
    if (v < 0.0) throw std::invalid_argument("canonical reference density has negative values");
  }
  FreeEnergyBackend backend{CanonicalModel{reference.rho, {}}, temperature};
  auto& model = std::get<CanonicalModel>(backend.model);
  const auto re = reference.rho.values();
  const double ref_floor = floor_for(re, backend.floor_fraction);
  model.log_reference.resize(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) model.log_reference[i] = std::log(std::max(re[i], ref_floor));
  return backend;
}

FreeEnergyField classical_free_energy(const DensityField& rho, const Field& energy, double temperature) {
  require_temperature(temperature, true);
  require_same_grid(rho.grid(), energy.grid());
  FreeEnergyField out{energy, BackendKind::classical, 0};
  const auto r = rho.rho.values();
  out.clamped_nodes = add_entropic(r, temperature, floor_for(r, kDefaultLogFloorFraction), out.values.values());
  return out;
}

FreeEnergyField bohm_free_energy(const DensityField& rho, const HamiltonianMatrix& h, double temperature) {
  require_temperature(temperature, true);
  require_same_grid(rho.grid(), h.grid);
  const auto r = rho.rho.values();
  const double floor = floor_for(r, kDefaultLogFloorFraction);
  FreeEnergyField out{Field(rho.grid()), BackendKind::bohm, 0};
  std::vector<double> amplitude(r.size());
  bohm_potential(h, r, floor, out.values.values(), amplitude);
  out.clamped_nodes = add_entropic(r, temperature, floor, out.values.values());
  return out;
}

FreeEnergyField canonical_free_energy(const DensityField& rho, const DensityField& reference,
                                      double temperature) {
  require_temperature(temperature, false);
  require_same_grid(rho.grid(), reference.grid());
  const auto r = rho.rho.values();
  const auto re = reference.rho.values();
  const double ref_floor = floor_for(re, kDefaultLogFloorFraction);
  FreeEnergyField out{Field(rho.grid()), BackendKind::canonical, 0};
  auto f = out.values.values();
  for (std::size_t i = 0; i < r.size(); ++i) f[i] = -temperature * std::log(std::max(re[i], ref_floor));
  out.clamped_nodes = add_entropic(r, temperature, floor_for(r, kDefaultLogFloorFraction), f);
  return out;
}

FreeEnergyField free_energy(const DensityField& rho, const FreeEnergyBackend& backend) {
  require_same_grid(rho.grid(), backend.grid());
  const auto r = rho.rho.values();
  const double floor = log_floor(backend, r);
  FreeEnergyField out{Field(rho.grid()), backend.kind(), 0};
  std::vector<double> scratch(r.size());
  potential_part(backend, r, floor, out.values.values(), scratch);
  out.clamped_nodes = add_entropic(r, backend.temperature, floor, out.values.values());
  return out;
}

double log_floor(const FreeEnergyBackend& backend, std::span<const double> rho) {
  return floor_for(rho, backend.floor_fraction);
}

void potential_part(const FreeEnergyBackend& backend, std::span<const double> rho, double floor,
                    std::span<double> out, std::span<double> scratch) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ClassicalModel>) {
          std::copy(m.energy.values().begin(), m.energy.values().end(), out.begin());
        } else if constexpr (std::is_same_v<T, BohmModel>) {
          bohm_potential(m.hamiltonian, rho, floor, out, scratch);
        } else {
          const auto re = m.reference.values();
          if (m.log_reference.size() == re.size()) {
            for (std::size_t i = 0; i < re.size(); ++i) out[i] = -backend.temperature * m.log_reference[i];
          } else {
            const double ref_floor = floor_for(re, backend.floor_fraction);
            for (std::size_t i = 0; i < re.size(); ++i) {
              out[i] = -backend.temperature * std::log(std::max(re[i], ref_floor));
            }
          }
        }
      },
      backend.model);
}

}  // namespace thermorelax
