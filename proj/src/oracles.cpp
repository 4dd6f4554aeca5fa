#include "thermorelax/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermorelax {

void OUParams::validate() const {
  if (!(friction > 0.0 && mass > 0.0 && temperature > 0.0 && var0 > 0.0)) {
    throw std::invalid_argument("OU friction, mass, temperature and var0 must be positive");
  }
  if (!std::isfinite(mean0)) throw std::invalid_argument("OU mean0 must be finite");
}

Moments ou_analytic_moments(const OUParams& params, double t) {
  params.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
  const double rate = params.friction / params.mass;
  const double stationary = params.mass * params.temperature;
  return {params.mean0 * std::exp(-rate * t), stationary + (params.var0 - stationary) * std::exp(-2.0 * rate * t)};
}

Field analytic_ground_state(const Grid1D& grid, double mass, double omega, double hbar) {
  if (!(mass > 0.0 && omega > 0.0 && hbar > 0.0)) throw std::invalid_argument("mass, omega, hbar must be positive");
  const double var = hbar / (2.0 * mass * omega);
  Field phi = Field::sample(grid, [var](double q) { return std::exp(-q * q / (4.0 * var)); });
  std::vector<double> sq(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) sq[i] = phi[i] * phi[i];
  const double norm = std::sqrt(integrate(sq, grid));
  for (double& v : phi.values()) v /= norm;
  return phi;
}

double stationarity_residual(const DensityField& rho, const FreeEnergyBackend& backend,
                             const KineticCoefficients& coefficients, Space space, const StepperOptions& options,
                             double dt) {
  const RelaxationState state{rho, space, 0};
  if (!(dt > 0.0)) {
    const double bound = stable_dt(state, backend, coefficients);
    dt = std::isfinite(bound) ? options.safety * bound : 1.0;
  }
  const RelaxationState next = drift_diffusion_step(state, backend, coefficients, dt, options);
  double worst = 0.0;
  for (std::size_t i = 0; i < rho.rho.size(); ++i) {
    worst = std::max(worst, std::fabs(next.density.rho[i] - rho.rho[i]) / dt);
  }
  return worst;
}

}  // namespace thermorelax
