// Closed-form references for the solvers. The moment and ground-state oracles
// depend on numerics only; the stationarity residual wraps one stepper call.
#pragma once

#include "thermorelax/numerics.hpp"
#include "thermorelax/relaxation.hpp"

namespace thermorelax {

struct OUParams {
  double friction = 1.0;
  double mass = 1.0;
  double temperature = 1.0;
  double mean0 = 0.0;
  double var0 = 1.0;

  void validate() const;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Free-gas momentum moments under friction b:
/// mean0 e^{-bt/m}, m kT + (var0 - m kT) e^{-2bt/m}.
Moments ou_analytic_moments(const OUParams& params, double t);

/// Normalized Gaussian amplitude with |phi|^2 of variance hbar / (2 m omega),
/// rescaled to unit trapezoid norm on the grid.
Field analytic_ground_state(const Grid1D& grid, double mass, double omega, double hbar);

/// max |rho' - rho| / dt over one step of size dt (defaults to
/// safety * stable_dt, or 1 when stable_dt is unbounded).
double stationarity_residual(const DensityField& rho, const FreeEnergyBackend& backend,
                             const KineticCoefficients& coefficients, Space space, const StepperOptions& options = {},
                             double dt = 0.0);

}  // namespace thermorelax
