// Time evolution of densities as a gradient flow of a free energy:
//
//   d rho/dt = d/da ( rho L d F/da )
//
// in momentum, position or phase space, with a conservative explicit scheme,
// step rejection on negative undershoot, and Lyapunov monitoring.
#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermorelax/equilibrium.hpp"
#include "thermorelax/free_energy.hpp"
#include "thermorelax/kernels.hpp"

namespace thermorelax {

enum class Space { momentum, position, phase };

std::string_view to_string(Space space);
Space space_from_string(std::string_view name);

/// Friction b with the phase-space supermatrix L_pp = b, L_qq = 1/b,
/// L_pq = -L_qp = 1. L_qq may be overridden (e.g. 0 drops configuration
/// diffusion, leaving the Klein-Kramers form).
struct KineticCoefficients {
  double friction = 1.0;  ///< b
  double mass = 1.0;
  std::optional<double> position_mobility;

  double momentum_block() const { return friction; }
  double position_block() const { return position_mobility.value_or(1.0 / friction); }
  /// Antisymmetric coupling: L_pq = +1, L_qp = -1.
  static constexpr double coupling() { return 1.0; }
  /// L in 1D: b in momentum space, L_qq in position space.
  double mobility(Space space) const;
  void validate() const;
};

/// How the entropic part kT ln rho of F enters the flux.
enum class EntropyForm {
  logarithmic,  ///< kept inside F: rho * dF with F = Phi + kT ln rho
  diffusion     ///< rewritten as kT * d rho, leaving Phi in the drift
};

std::string_view to_string(EntropyForm form);
EntropyForm entropy_form_from_string(std::string_view name);

struct StepperOptions {
  EntropyForm entropy = EntropyForm::logarithmic;
  kernels::Execution execution = kernels::Execution::parallel;
  double safety = 0.5;  ///< dt = safety * stable_dt
};

/// Post-step values below -kRejectionTolerance * max(rho) reject the step.
inline constexpr double kRejectionTolerance = 1e-12;

class StepRejected : public NumericalError {
 public:
  StepRejected(std::size_t step, double min_value, double max_value);
  std::size_t step() const { return step_; }
  double min_value() const { return min_value_; }

 private:
  std::size_t step_;
  double min_value_;
};

class NanDetected : public NumericalError {
 public:
  explicit NanDetected(std::size_t step);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct RelaxationState {
  DensityField density;
  Space space = Space::position;
  std::size_t step_count = 0;

  double time() const { return density.time; }
};

struct PhaseSpaceState {
  DensityField2D density;
  std::size_t step_count = 0;

  double time() const { return density.time; }
};

/// One explicit step. Throws StepRejected / NanDetected; the input is untouched.
RelaxationState drift_diffusion_step(const RelaxationState& state, const FreeEnergyBackend& backend,
                                     const KineticCoefficients& coefficients, double dt,
                                     const StepperOptions& options = {});

/// d rho / dt of the scheme (no positivity checks).
Field relaxation_rate(const RelaxationState& state, const FreeEnergyBackend& backend,
                      const KineticCoefficients& coefficients, const StepperOptions& options = {});

/// Largest explicit step: 1 / (2D/h^2 + L max|dPhi|/h + 8K/h^4), where D = kT L,
/// K is the linearized Bohm coefficient and the drift maximum is taken over
/// faces carrying non-negligible density. Each term alone reproduces the
/// corresponding single-mechanism bound; +infinity when all vanish.
double stable_dt(const RelaxationState& state, const FreeEnergyBackend& backend,
                 const KineticCoefficients& coefficients);

/// classical: int rho (E + kT ln rho); bohm: int (rho^1/2 H rho^1/2 + kT rho ln rho);
/// canonical: kT int rho ln(rho / rho_e). Trapezoid, clamped logs.
double lyapunov_functional(const RelaxationState& state, const FreeEnergyBackend& backend);

/// Conservative phase-space step: reversible centered fluxes from the
/// antisymmetric blocks plus dissipative fluxes from L_pp and L_qq. F_q is
/// evaluated along q for every fixed p, F_p along p for every fixed q.
PhaseSpaceState phase_space_step(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                                 const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients,
                                 double dt, const StepperOptions& options = {});

struct PhaseSpaceRate {
  Field2D total;
  Field2D antisymmetric;
  Field2D dissipative;
};

PhaseSpaceRate phase_space_rate(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                                const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients,
                                const StepperOptions& options = {});

double stable_dt(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                 const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients);

/// int rho (Phi_q + Phi_p + kT ln rho) over phase space.
double lyapunov_functional(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                           const FreeEnergyBackend& backend_p);

/// Sampled diagnostics; columns of an axis the run does not have stay empty.
struct Record {
  double time = 0.0;
  std::optional<double> mean_q, var_q, mean_p, var_p, cov_qp;
  double mass = 0.0;
  double min_rho = 0.0;
  double lyapunov = 0.0;
};

enum class TerminationStatus { completed, rejected_step, nan_abort };

std::string_view to_string(TerminationStatus status);

struct Trajectory {
  std::vector<Record> records;
  std::optional<RelaxationState> final_state;
  std::optional<PhaseSpaceState> final_phase_state;
  std::size_t steps = 0;
  TerminationStatus status = TerminationStatus::completed;
  std::string message;
  std::size_t failing_step = 0;
  std::exception_ptr error;  ///< the StepRejected or NanDetected that ended the run
};

/// Steps at dt = safety * stable_dt (last step trimmed to land on t_end) and
/// records every `output_stride` steps plus the initial state. A failing step
/// ends the run with the status set; the states up to it are kept.
Trajectory evolve_recorded(const RelaxationState& initial, const FreeEnergyBackend& backend,
                           const KineticCoefficients& coefficients, double t_end, std::size_t output_stride,
                           const StepperOptions& options = {});

Trajectory evolve_recorded(const PhaseSpaceState& initial, const FreeEnergyBackend& backend_q,
                           const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients,
                           double t_end, std::size_t output_stride, const StepperOptions& options = {});

/// As evolve_recorded, but rethrows the step error (carrying its index).
Trajectory evolve(const RelaxationState& initial, const FreeEnergyBackend& backend,
                  const KineticCoefficients& coefficients, double t_end, std::size_t output_stride,
                  const StepperOptions& options = {});

Trajectory evolve(const PhaseSpaceState& initial, const FreeEnergyBackend& backend_q,
                  const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients, double t_end,
                  std::size_t output_stride, const StepperOptions& options = {});

Record make_record(const RelaxationState& state, const FreeEnergyBackend& backend);
Record make_record(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                   const FreeEnergyBackend& backend_p);

/// Translates a density by the node count nearest to `displacement` and
/// renormalizes. The vacated end repeats the last carried value: a zero fill
/// would put an unbounded jump into ln rho, which the logarithmic flux form
/// turns into an arbitrarily stiff diffusion.
DensityField shifted_density(const DensityField& rho, double displacement);
DensityField2D shifted_density(const DensityField2D& rho, double displacement_q, double displacement_p);

/// rho rescaled to unit trapezoid mass.
DensityField normalized(DensityField rho);
DensityField2D normalized(DensityField2D rho);

}  // namespace thermorelax
