#include "thermorelax/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

#include "step_checks.hpp"

namespace thermorelax {

std::string_view to_string(Space space) {
  switch (space) {
    case Space::momentum:
      return "momentum";
    case Space::position:
      return "position";
    case Space::phase:
      return "phase";
  }
  return "unknown";
}

Space space_from_string(std::string_view name) {
  if (name == "momentum") return Space::momentum;
  if (name == "position") return Space::position;
  if (name == "phase") return Space::phase;
  throw std::invalid_argument("unknown space '" + std::string(name) + "'");
}

std::string_view to_string(EntropyForm form) {
  return form == EntropyForm::logarithmic ? "logarithmic" : "diffusion";
}

EntropyForm entropy_form_from_string(std::string_view name) {
  if (name == "logarithmic") return EntropyForm::logarithmic;
  if (name == "diffusion") return EntropyForm::diffusion;
  throw std::invalid_argument("unknown entropy form '" + std::string(name) + "'");
}

std::string_view to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::completed:
      return "completed";
    case TerminationStatus::rejected_step:
      return "rejected_step";
    case TerminationStatus::nan_abort:
      return "nan_abort";
  }
  return "unknown";
}

double KineticCoefficients::mobility(Space space) const {
  switch (space) {
    case Space::momentum:
      return momentum_block();
    case Space::position:
      return position_block();
    case Space::phase:
      break;
  }
  throw std::invalid_argument("phase space has no scalar mobility");
}

void KineticCoefficients::validate() const {
  if (!(friction > 0.0) || !std::isfinite(friction)) throw std::invalid_argument("friction must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
  if (position_mobility && (!(*position_mobility >= 0.0) || !std::isfinite(*position_mobility))) {
    throw std::invalid_argument("position mobility must be non-negative");
  }
}

namespace {

std::string rejection_message(std::size_t step, double min_value, double max_value) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "unstable dt: step " << step << " produced min rho = " << min_value << " (max rho = " << max_value
      << ")";
  return msg.str();
}

std::string nan_message(std::size_t step) {
  std::ostringstream msg;
  msg << "NaN detected at step " << step;
  return msg.str();
}

void require_grid(const Grid1D& a, const Grid1D& b) {
  if (!(a == b)) throw std::invalid_argument("backend grid differs from the density grid");
}

struct Drive1D {
  std::vector<double> phi;
  std::vector<double> drive;
  std::vector<double> log_rho;
  double floor = 0.0;
};

// ln rho is only filled when the logarithmic form or the Lyapunov value needs it.
Drive1D compute_drive(std::span<const double> rho, const FreeEnergyBackend& backend, EntropyForm form,
                      bool need_log = false) {
  Drive1D d;
  const std::size_t n = rho.size();
  d.phi.resize(n);
  std::vector<double> scratch(n);
  d.floor = log_floor(backend, rho);
  potential_part(backend, rho, d.floor, d.phi, scratch);
  if (form == EntropyForm::logarithmic || need_log) {
    d.log_rho.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.log_rho[i] = std::log(std::max(rho[i], d.floor));
  }
  d.drive = d.phi;
  if (form == EntropyForm::logarithmic) {
    for (std::size_t i = 0; i < n; ++i) d.drive[i] += backend.temperature * d.log_rho[i];
  }
  return d;
}

kernels::DriftDiffusion1D flux_input(std::span<const double> rho, const Drive1D& d, double mobility,
                                     double temperature, EntropyForm form, double h) {
  return kernels::DriftDiffusion1D{rho, d.drive, mobility,
                                   form == EntropyForm::diffusion ? temperature * mobility : 0.0, h};
}

}  // namespace

StepRejected::StepRejected(std::size_t step, double min_value, double max_value)
    : NumericalError(rejection_message(step, min_value, max_value)), step_(step), min_value_(min_value) {}

NanDetected::NanDetected(std::size_t step) : NumericalError(nan_message(step)), step_(step) {}

void check_step(std::span<const double> values, std::size_t step) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isnan(v) || std::isinf(v)) throw NanDetected(step);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo < -kRejectionTolerance * hi) throw StepRejected(step, lo, hi);
}

Field relaxation_rate(const RelaxationState& state, const FreeEnergyBackend& backend,
                      const KineticCoefficients& coefficients, const StepperOptions& options) {
  coefficients.validate();
  const Grid1D& grid = state.density.grid();
  require_grid(grid, backend.grid());
  const auto rho = state.density.rho.values();
  const Drive1D d = compute_drive(rho, backend, options.entropy);
  const auto in = flux_input(rho, d, coefficients.mobility(state.space), backend.temperature, options.entropy,
                             grid.h);
  Field rate(grid);
  std::vector<double> faces;
  kernels::drift_diffusion_rate(in, rate.values(), faces, options.execution);
  return rate;
}

RelaxationState drift_diffusion_step(const RelaxationState& state, const FreeEnergyBackend& backend,
                                     const KineticCoefficients& coefficients, double dt,
                                     const StepperOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
  const Field rate = relaxation_rate(state, backend, coefficients, options);
  std::vector<double> next(rate.size());
  kernels::axpy_update(state.density.rho.values(), rate.values(), dt, next, options.execution);
  const std::size_t step = state.step_count + 1;
  check_step(next, step);

  RelaxationState out{DensityField{Field(state.density.grid(), std::move(next)), state.density.time + dt},
                      state.space, step};
  return out;
}

double stable_dt(const RelaxationState& state, const FreeEnergyBackend& backend,
                 const KineticCoefficients& coefficients) {
  coefficients.validate();
  const Grid1D& grid = state.density.grid();
  require_grid(grid, backend.grid());
  const auto rho = state.density.rho.values();
  const double mobility = coefficients.mobility(state.space);
  const double h = grid.h;

  const Drive1D d = compute_drive(rho, backend, EntropyForm::diffusion);
  double rho_max = 0.0;
  for (double v : rho) rho_max = std::max(rho_max, v);
  double drift = 0.0;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    if (0.5 * (rho[i] + rho[i + 1]) < kRejectionTolerance * rho_max) continue;
    drift = std::max(drift, std::fabs(d.phi[i + 1] - d.phi[i]) / h);
  }

  double rate = 2.0 * backend.temperature * mobility / (h * h) + mobility * drift / h;
  if (const auto* bohm = std::get_if<BohmModel>(&backend.model)) {
    const double k = 0.5 * mobility * bohm->hamiltonian.kinetic_prefactor();
    rate += 8.0 * k / (h * h * h * h);
  }
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

double lyapunov_functional(const RelaxationState& state, const FreeEnergyBackend& backend) {
  const Grid1D& grid = state.density.grid();
  require_grid(grid, backend.grid());
  const auto rho = state.density.rho.values();
  const Drive1D d = compute_drive(rho, backend, EntropyForm::diffusion, true);
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    total += grid.weight(i) * rho[i] * (d.phi[i] + backend.temperature * d.log_rho[i]);
  }
  return total;
}

Record make_record(const RelaxationState& state, const FreeEnergyBackend& backend) {
  const DensityField& rho = state.density;
  Record r;
  r.time = rho.time;
  r.mass = density_moment(rho, 0);
  const double mean = density_moment(rho, 1) / r.mass;
  const double var = density_moment(rho, 2) / r.mass - mean * mean;
  if (state.space == Space::momentum) {
    r.mean_p = mean;
    r.var_p = var;
  } else {
    r.mean_q = mean;
    r.var_q = var;
  }
  const auto v = rho.rho.values();
  r.min_rho = *std::min_element(v.begin(), v.end());
  r.lyapunov = lyapunov_functional(state, backend);
  return r;
}

namespace {

bool reached(double t, double t_end) { return t_end - t <= 1e-12 * std::max(1.0, std::fabs(t_end)); }

template <class State, class StableFn, class StepFn, class RecordFn>
Trajectory run_loop(const State& initial, double t_end, std::size_t stride, const StepperOptions& options,
                    StableFn stable, StepFn step, RecordFn record) {
  if (!(t_end > initial.time())) throw std::invalid_argument("t_end must exceed the initial time");
  if (stride == 0) throw std::invalid_argument("output stride must be positive");
  if (!(options.safety > 0.0)) throw std::invalid_argument("safety factor must be positive");

  Trajectory traj;
  State state = initial;
  traj.records.push_back(record(state));
  while (!reached(state.time(), t_end)) {
    const double remaining = t_end - state.time();
    double dt = options.safety * stable(state);
    const bool last = !(dt < remaining);
    if (last) dt = remaining;
    try {
      State next = step(state, dt);
      if (last) next.density.time = t_end;
      state = std::move(next);
    } catch (const StepRejected& e) {
      traj.status = TerminationStatus::rejected_step;
      traj.message = e.what();
      traj.failing_step = e.step();
      traj.error = std::current_exception();
      break;
    } catch (const NanDetected& e) {
      traj.status = TerminationStatus::nan_abort;
      traj.message = e.what();
      traj.failing_step = e.step();
      traj.error = std::current_exception();
      break;
    }
    ++traj.steps;
    if (traj.steps % stride == 0) traj.records.push_back(record(state));
  }
  if constexpr (std::is_same_v<State, RelaxationState>) {
    traj.final_state = std::move(state);
  } else {
    traj.final_phase_state = std::move(state);
  }
  return traj;
}

[[noreturn]] void rethrow(const Trajectory& traj) { std::rethrow_exception(traj.error); }

}  // namespace

Trajectory evolve_recorded(const RelaxationState& initial, const FreeEnergyBackend& backend,
                           const KineticCoefficients& coefficients, double t_end, std::size_t output_stride,
                           const StepperOptions& options) {
  return run_loop(
      initial, t_end, output_stride, options,
      [&](const RelaxationState& s) { return stable_dt(s, backend, coefficients); },
      [&](const RelaxationState& s, double dt) { return drift_diffusion_step(s, backend, coefficients, dt, options); },
      [&](const RelaxationState& s) { return make_record(s, backend); });
}

Trajectory evolve_recorded(const PhaseSpaceState& initial, const FreeEnergyBackend& backend_q,
                           const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients,
                           double t_end, std::size_t output_stride, const StepperOptions& options) {
  return run_loop(
      initial, t_end, output_stride, options,
      [&](const PhaseSpaceState& s) { return stable_dt(s, backend_q, backend_p, coefficients); },
      [&](const PhaseSpaceState& s, double dt) {
        return phase_space_step(s, backend_q, backend_p, coefficients, dt, options);
      },
      [&](const PhaseSpaceState& s) { return make_record(s, backend_q, backend_p); });
}

Trajectory evolve(const RelaxationState& initial, const FreeEnergyBackend& backend,
                  const KineticCoefficients& coefficients, double t_end, std::size_t output_stride,
                  const StepperOptions& options) {
  Trajectory traj = evolve_recorded(initial, backend, coefficients, t_end, output_stride, options);
  if (traj.status != TerminationStatus::completed) rethrow(traj);
  return traj;
}

Trajectory evolve(const PhaseSpaceState& initial, const FreeEnergyBackend& backend_q,
                  const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients, double t_end,
                  std::size_t output_stride, const StepperOptions& options) {
  Trajectory traj = evolve_recorded(initial, backend_q, backend_p, coefficients, t_end, output_stride, options);
  if (traj.status != TerminationStatus::completed) rethrow(traj);
  return traj;
}

DensityField normalized(DensityField rho) {
  const double mass = integrate(rho.rho);
  if (!(mass > 0.0)) throw std::invalid_argument("density has no mass to normalize");
  for (double& v : rho.rho.values()) v /= mass;
  return rho;
}

DensityField2D normalized(DensityField2D rho) {
  const double mass = integrate(rho.rho);
  if (!(mass > 0.0)) throw std::invalid_argument("density has no mass to normalize");
  for (double& v : rho.rho.values()) v /= mass;
  return rho;
}

namespace {

std::ptrdiff_t node_shift(double displacement, double h) {
  return static_cast<std::ptrdiff_t>(std::llround(displacement / h));
}

std::size_t clamp_index(std::ptrdiff_t i, std::ptrdiff_t n) { return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, n - 1)); }

}  // namespace

DensityField shifted_density(const DensityField& rho, double displacement) {
  const Grid1D& grid = rho.grid();
  const std::ptrdiff_t k = node_shift(displacement, grid.h);
  const auto n = static_cast<std::ptrdiff_t>(grid.n);
  std::vector<double> out(grid.n);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = rho.rho[clamp_index(i - k, n)];
  }
  return normalized(DensityField{Field(grid, std::move(out)), rho.time});
}

DensityField2D shifted_density(const DensityField2D& rho, double displacement_q, double displacement_p) {
  const Grid2D& grid = rho.grid();
  const std::ptrdiff_t kq = node_shift(displacement_q, grid.q.h);
  const std::ptrdiff_t kp = node_shift(displacement_p, grid.p.h);
  const auto nq = static_cast<std::ptrdiff_t>(grid.q.n);
  const auto np = static_cast<std::ptrdiff_t>(grid.p.n);
  Field2D out(grid);
  for (std::ptrdiff_t i = 0; i < nq; ++i) {
    for (std::ptrdiff_t j = 0; j < np; ++j) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = rho.rho(clamp_index(i - kq, nq), clamp_index(j - kp, np));
    }
  }
  return normalized(DensityField2D{std::move(out), rho.time});
}

}  // namespace thermorelax
