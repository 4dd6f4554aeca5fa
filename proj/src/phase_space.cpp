#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "step_checks.hpp"
#include "thermorelax/relaxation.hpp"

namespace thermorelax {

namespace {

void require_compatible(const Grid2D& grid, const FreeEnergyBackend& backend_q, const FreeEnergyBackend& backend_p) {
  if (!(backend_q.grid() == grid.q)) throw std::invalid_argument("q backend grid differs from the density grid");
  if (!(backend_p.grid() == grid.p)) throw std::invalid_argument("p backend grid differs from the density grid");
  if (backend_q.temperature != backend_p.temperature) {
    throw std::invalid_argument("q and p backends must share one temperature");
  }
}

// Potential parts on every slice: Phi_q along q at fixed p, Phi_p along p at fixed q.
struct Drive2D {
  std::vector<double> phi_q, phi_p, log_rho, drive_q, drive_p;
};

// ln rho is only filled when the logarithmic form or the Lyapunov value needs it.
Drive2D compute_drive(const Grid2D& grid, std::span<const double> rho, const FreeEnergyBackend& backend_q,
                      const FreeEnergyBackend& backend_p, EntropyForm form, bool need_log = false) {
  const std::size_t nq = grid.q.n;
  const std::size_t np = grid.p.n;
  Drive2D d;
  d.phi_q.resize(grid.size());
  d.phi_p.resize(grid.size());

  const double floor_q = log_floor(backend_q, rho);
  const double floor_p = log_floor(backend_p, rho);
  std::vector<double> slice(nq), out(nq), scratch(std::max(nq, np));
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nq; ++i) slice[i] = rho[grid.index(i, j)];
    potential_part(backend_q, slice, floor_q, out, std::span<double>(scratch).first(nq));
    for (std::size_t i = 0; i < nq; ++i) d.phi_q[grid.index(i, j)] = out[i];
  }
  for (std::size_t i = 0; i < nq; ++i) {
    const std::size_t row = grid.index(i, 0);
    potential_part(backend_p, rho.subspan(row, np), floor_p, std::span<double>(d.phi_p).subspan(row, np),
                   std::span<double>(scratch).first(np));
  }

  d.drive_q = d.phi_q;
  d.drive_p = d.phi_p;
  if (form == EntropyForm::logarithmic || need_log) {
    const double floor = std::min(floor_q, floor_p);
    d.log_rho.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) d.log_rho[k] = std::log(std::max(rho[k], floor));
  }
  if (form == EntropyForm::logarithmic) {
    const double kt = backend_q.temperature;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      d.drive_q[k] += kt * d.log_rho[k];
      d.drive_p[k] += kt * d.log_rho[k];
    }
  }
  return d;
}

Field2D rate_part(const PhaseSpaceState& state, const Drive2D& d, const KineticCoefficients& coefficients,
                  double temperature, const StepperOptions& options, bool antisymmetric, bool dissipative) {
  const Grid2D& grid = state.density.grid();
  kernels::PhaseSpaceFlux in{grid,
                             state.density.rho.values(),
                             d.drive_q,
                             d.drive_p,
                             coefficients.position_block(),
                             coefficients.momentum_block(),
                             options.entropy == EntropyForm::diffusion ? temperature : 0.0,
                             antisymmetric,
                             dissipative};
  Field2D rate(grid);
  kernels::PhaseSpaceWorkspace ws;
  kernels::phase_space_rate(in, rate.values(), ws, options.execution);
  return rate;
}

double kinetic_coefficient(const FreeEnergyBackend& backend) {
  if (const auto* bohm = std::get_if<BohmModel>(&backend.model)) return bohm->hamiltonian.kinetic_prefactor();
  return 0.0;
}

}  // namespace

PhaseSpaceRate phase_space_rate(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                                const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients,
                                const StepperOptions& options) {
  coefficients.validate();
  const Grid2D& grid = state.density.grid();
  require_compatible(grid, backend_q, backend_p);
  const Drive2D d = compute_drive(grid, state.density.rho.values(), backend_q, backend_p, options.entropy);
  const double kt = backend_q.temperature;
  PhaseSpaceRate out{rate_part(state, d, coefficients, kt, options, true, true),
                     rate_part(state, d, coefficients, kt, options, true, false),
                     rate_part(state, d, coefficients, kt, options, false, true)};
  return out;
}

PhaseSpaceState phase_space_step(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                                 const FreeEnergyBackend& backend_p, const KineticCoefficients& coefficients,
                                 double dt, const StepperOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
  coefficients.validate();
  const Grid2D& grid = state.density.grid();
  require_compatible(grid, backend_q, backend_p);
  const Drive2D d = compute_drive(grid, state.density.rho.values(), backend_q, backend_p, options.entropy);
  const Field2D rate = rate_part(state, d, coefficients, backend_q.temperature, options, true, true);

  std::vector<double> next(grid.size());
  kernels::axpy_update(state.density.rho.values(), rate.values(), dt, next, options.execution);
  const std::size_t step = state.step_count + 1;
  check_step(next, step);
  return PhaseSpaceState{DensityField2D{Field2D(grid, std::move(next)), state.density.time + dt}, step};
}

double stable_dt(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q, const FreeEnergyBackend& backend_p,
                 const KineticCoefficients& coefficients) {
  coefficients.validate();
  const Grid2D& grid = state.density.grid();
  require_compatible(grid, backend_q, backend_p);
  const auto rho = state.density.rho.values();
  const Drive2D d = compute_drive(grid, rho, backend_q, backend_p, EntropyForm::diffusion);
  const std::size_t nq = grid.q.n;
  const std::size_t np = grid.p.n;
  const double hq = grid.q.h;
  const double hp = grid.p.h;
  const double lqq = coefficients.position_block();
  const double lpp = coefficients.momentum_block();
  const double kt = backend_q.temperature;

  const double rho_max = *std::max_element(rho.begin(), rho.end());
  const double cut = kRejectionTolerance * rho_max;
  // Dissipative drifts on faces, reversible speeds on nodes.
  double drift_q = 0.0;
  double drift_p = 0.0;
  double speed_q = 0.0;
  double speed_p = 0.0;
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      const std::size_t k = grid.index(i, j);
      if (i + 1 < nq) {
        const std::size_t b = grid.index(i + 1, j);
        if (0.5 * (rho[k] + rho[b]) >= cut) drift_q = std::max(drift_q, std::fabs(d.phi_q[b] - d.phi_q[k]) / hq);
      }
      if (j + 1 < np && 0.5 * (rho[k] + rho[k + 1]) >= cut) {
        drift_p = std::max(drift_p, std::fabs(d.phi_p[k + 1] - d.phi_p[k]) / hp);
      }
      if (rho[k] < cut) continue;
      if (j > 0 && j + 1 < np) speed_q = std::max(speed_q, std::fabs(d.phi_p[k + 1] - d.phi_p[k - 1]) / (2.0 * hp));
      if (i > 0 && i + 1 < nq) {
        speed_p = std::max(speed_p, std::fabs(d.phi_q[grid.index(i + 1, j)] - d.phi_q[grid.index(i - 1, j)]) /
                                        (2.0 * hq));
      }
    }
  }

  double rate = 2.0 * kt * lqq / (hq * hq) + lqq * drift_q / hq + 2.0 * kt * lpp / (hp * hp) + lpp * drift_p / hp +
                speed_q / hq + speed_p / hp;
  // Dispersive Bohm terms, with the unit reversible coupling added to each block.
  const double kq = 0.5 * (lqq + KineticCoefficients::coupling()) * kinetic_coefficient(backend_q);
  const double kp = 0.5 * (lpp + KineticCoefficients::coupling()) * kinetic_coefficient(backend_p);
  rate += 8.0 * kq / (hq * hq * hq * hq) + 8.0 * kp / (hp * hp * hp * hp);
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

double lyapunov_functional(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                           const FreeEnergyBackend& backend_p) {
  const Grid2D& grid = state.density.grid();
  require_compatible(grid, backend_q, backend_p);
  const auto rho = state.density.rho.values();
  const Drive2D d = compute_drive(grid, rho, backend_q, backend_p, EntropyForm::diffusion, true);
  const double kt = backend_q.temperature;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    const double wq = grid.q.weight(i);
    for (std::size_t j = 0; j < grid.p.n; ++j) {
      const std::size_t k = grid.index(i, j);
      total += wq * grid.p.weight(j) * rho[k] * (d.phi_q[k] + d.phi_p[k] + kt * d.log_rho[k]);
    }
  }
  return total;
}

Record make_record(const PhaseSpaceState& state, const FreeEnergyBackend& backend_q,
                   const FreeEnergyBackend& backend_p) {
  const DensityField2D& rho = state.density;
  Record r;
  r.time = rho.time;
  r.mass = density_moment(rho, 0, 0);
  const double mq = density_moment(rho, 1, 0) / r.mass;
  const double mp = density_moment(rho, 0, 1) / r.mass;
  r.mean_q = mq;
  r.mean_p = mp;
  r.var_q = density_moment(rho, 2, 0) / r.mass - mq * mq;
  r.var_p = density_moment(rho, 0, 2) / r.mass - mp * mp;
  r.cov_qp = density_moment(rho, 1, 1) / r.mass - mq * mp;
  const auto v = rho.rho.values();
  r.min_rho = *std::min_element(v.begin(), v.end());
  r.lyapunov = lyapunov_functional(state, backend_q, backend_p);
  return r;
}

}  // namespace thermorelax
