#include "thermorelax/scenario/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thermorelax/oscillator.hpp"

namespace thermorelax::scenario {

double RunReport::metric(const std::string& name) const {
  for (const auto& [key, value] : metrics) {
    if (key == name) return value;
  }
  throw std::out_of_range("run report has no metric '" + name + "'");
}

Spectrum thermal_spectrum(const HamiltonianMatrix& h, double beta, std::size_t states) {
  const std::size_t n = h.grid.n;
  if (states > 0) return solve_spectrum(h, std::min(states, n));
  std::size_t k = std::min<std::size_t>(64, n);
  while (true) {
    Spectrum s = solve_spectrum(h, k);
    try {
      partition_function(s, beta);
      return s;
    } catch (const TruncationError&) {
      if (k == n) throw;
      k = std::min(n, 2 * k);
    }
  }
}

namespace {

PotentialSpec potential_of(const SystemConfig& s) {
  switch (s.potential) {
    case PotentialKind::free:
      return FreePotential{};
    case PotentialKind::harmonic:
      return HarmonicPotential{s.mass, s.omega, s.force};
    case PotentialKind::double_well:
      return QuarticDoubleWell{s.a2, s.a4};
  }
  throw std::logic_error("unhandled potential kind");
}

Grid1D axis_grid(const AxisConfig& a) { return build_grid(a.lo, a.hi, a.n); }

/// Everything needed to relax along one axis.
struct Axis {
  FreeEnergyBackend backend;
  DensityField reference;               ///< equilibrium shape used for the initial state
  std::optional<double> target_variance;  ///< closed-form stationary variance when one exists
};

HamiltonianMatrix hamiltonian(const ScenarioConfig& c, const Grid1D& g, Space axis) {
  const SystemConfig& s = c.system;
  if (axis == Space::momentum) return discretize_momentum_hamiltonian(g, s.mass, s.hbar, potential_of(s));
  return discretize_position_hamiltonian(g, s.mass, s.hbar, potential_of(s));
}

Field classical_energy(const ScenarioConfig& c, const Grid1D& g, Space axis) {
  if (axis == Space::momentum) {
    const double m = c.system.mass;
    return Field::sample(g, [m](double p) { return p * p / (2.0 * m); });
  }
  return sample_potential(potential_of(c.system), g);
}

DensityField boltzmann(const Field& energy, double kt) {
  const auto e = energy.values();
  const double e0 = *std::min_element(e.begin(), e.end());
  std::vector<double> w(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) w[i] = std::exp(-(e[i] - e0) / kt);
  return normalized(DensityField{Field(energy.grid(), std::move(w)), 0.0});
}

// Stiffness kappa and kinetic prefactor c of the quadratic model along an axis,
// when the potential is quadratic (free gas included in momentum space).
std::optional<std::pair<double, double>> quadratic_model(const ScenarioConfig& c, Space axis) {
  const SystemConfig& s = c.system;
  if (axis == Space::momentum) {
    if (s.potential == PotentialKind::double_well) return std::nullopt;
    const double w = s.potential == PotentialKind::harmonic ? s.omega : 0.0;
    return std::pair{1.0 / s.mass, 0.5 * s.mass * w * w * s.hbar * s.hbar};
  }
  if (s.potential != PotentialKind::harmonic) return std::nullopt;
  return std::pair{s.mass * s.omega * s.omega, 0.5 * s.hbar * s.hbar / s.mass};
}

// Stationary variance of a Gaussian under each closure with quadratic energy
// kappa x^2 / 2 and kinetic prefactor c.
std::optional<double> target_variance(const ScenarioConfig& c, Space axis) {
  const auto model = quadratic_model(c, axis);
  if (!model) return std::nullopt;
  const auto [kappa, kin] = *model;
  const double kt = c.thermo.temperature();
  switch (c.thermo.backend) {
    case BackendKind::classical:
      return kt / kappa;
    case BackendKind::bohm:
      // kappa u^2 - kT u - c/2 = 0
      return (kt + std::sqrt(kt * kt + 2.0 * kappa * kin)) / (2.0 * kappa);
    case BackendKind::canonical: {
      const double hw = std::sqrt(2.0 * kappa * kin);  // hbar omega
      const double z = 0.5 * hw / kt;
      if (z < kSmallZ) return kt / kappa;
      return 0.5 * hw / kappa / std::tanh(z);
    }
  }
  return std::nullopt;
}

Axis make_axis(const ScenarioConfig& c, const Grid1D& g, Space axis) {
  const double kt = c.thermo.temperature();
  const double beta = c.thermo.inverse_temperature();
  switch (c.thermo.backend) {
    case BackendKind::classical: {
      Field e = classical_energy(c, g, axis);
      DensityField ref = boltzmann(e, kt);
      return Axis{classical_backend(std::move(e), kt), std::move(ref), target_variance(c, axis)};
    }
    case BackendKind::bohm: {
      HamiltonianMatrix h = hamiltonian(c, g, axis);
      DensityField ref = gibbs_density(make_ensemble(thermal_spectrum(h, beta, c.stepping.states), beta));
      return Axis{bohm_backend(std::move(h), kt), std::move(ref), target_variance(c, axis)};
    }
    case BackendKind::canonical: {
      const HamiltonianMatrix h = hamiltonian(c, g, axis);
      DensityField ref = gibbs_density(make_ensemble(thermal_spectrum(h, beta, c.stepping.states), beta));
      return Axis{canonical_backend(ref, kt), ref, target_variance(c, axis)};
    }
  }
  throw std::logic_error("unhandled backend");
}

double max_lyapunov_rise(const std::vector<Record>& records) {
  double rise = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    rise = std::max(rise, records[i].lyapunov - records[i - 1].lyapunov);
  }
  return rise;
}

void add_conservation_metrics(RunReport& r, const Record& last) {
  double mass_error = std::fabs(last.mass - 1.0);
  double min_rho = last.min_rho;
  for (const Record& rec : r.records) {
    mass_error = std::max(mass_error, std::fabs(rec.mass - 1.0));
    min_rho = std::min(min_rho, rec.min_rho);
  }
  r.metrics.emplace_back("max_mass_error", mass_error);
  r.metrics.emplace_back("min_rho", min_rho);
  r.metrics.emplace_back("max_lyapunov_rise", max_lyapunov_rise(r.records));
}

void add_target(RunReport& r, const std::string& axis, double value, std::optional<double> target) {
  r.metrics.emplace_back("final_var_" + axis, value);
  if (!target) return;
  r.metrics.emplace_back("target_var_" + axis, *target);
  r.metrics.emplace_back("relative_error_var_" + axis, value / *target - 1.0);
}

StepperOptions stepper_options(const ScenarioConfig& c) {
  StepperOptions o;
  o.entropy = c.stepping.entropy;
  o.execution = c.stepping.execution;
  o.safety = c.stepping.safety;
  return o;
}

KineticCoefficients coefficients(const ScenarioConfig& c) {
  return KineticCoefficients{c.thermo.friction, c.system.mass, c.thermo.position_mobility};
}

void finish(RunReport& r, const Trajectory& t) {
  r.records = t.records;
  r.steps = t.steps;
  r.status = t.status;
  r.message = t.message;
}

void run_relax_1d(const ScenarioConfig& c, RunReport& r) {
  const Space space = c.space.space;
  const Grid1D g = axis_grid(c.grid.axis);
  const Axis axis = make_axis(c, g, space);
  const double shift = c.space.shift.value_or(std::sqrt(variance(axis.reference)));
  const RelaxationState initial{shifted_density(axis.reference, shift), space, 0};

  const Trajectory t =
      evolve_recorded(initial, axis.backend, coefficients(c), c.stepping.t_end, c.stepping.stride, stepper_options(c));
  finish(r, t);
  r.final_density = t.final_state->density;

  const Record last = make_record(*t.final_state, axis.backend);
  const bool momentum = space == Space::momentum;
  r.metrics.emplace_back("final_time", last.time);
  r.metrics.emplace_back(momentum ? "final_mean_p" : "final_mean_q", momentum ? *last.mean_p : *last.mean_q);
  add_target(r, momentum ? "p" : "q", momentum ? *last.var_p : *last.var_q, axis.target_variance);
  if (c.thermo.backend != BackendKind::classical) {
    r.metrics.emplace_back("gibbs_var_" + std::string(momentum ? "p" : "q"), variance(axis.reference));
  }
  add_conservation_metrics(r, last);
}

DensityField2D product_density(const DensityField& q, const DensityField& p) {
  const Grid2D g{q.grid(), p.grid()};
  Field2D f(g);
  for (std::size_t i = 0; i < g.q.n; ++i) {
    for (std::size_t j = 0; j < g.p.n; ++j) f(i, j) = q.rho[i] * p.rho[j];
  }
  return normalized(DensityField2D{std::move(f), 0.0});
}

void run_relax_phase(const ScenarioConfig& c, RunReport& r) {
  const Grid1D gq = axis_grid(c.grid.axis);
  const Grid1D gp = axis_grid(c.grid.p);
  const Axis aq = make_axis(c, gq, Space::position);
  const Axis ap = make_axis(c, gp, Space::momentum);
  const double shift = c.space.shift.value_or(std::sqrt(variance(aq.reference)));
  const PhaseSpaceState initial{shifted_density(product_density(aq.reference, ap.reference), shift, c.space.shift_p),
                                0};

  const Trajectory t = evolve_recorded(initial, aq.backend, ap.backend, coefficients(c), c.stepping.t_end,
                                       c.stepping.stride, stepper_options(c));
  finish(r, t);
  r.final_phase_density = t.final_phase_state->density;

  const Record last = make_record(*t.final_phase_state, aq.backend, ap.backend);
  r.metrics.emplace_back("final_time", last.time);
  r.metrics.emplace_back("final_mean_q", *last.mean_q);
  r.metrics.emplace_back("final_mean_p", *last.mean_p);
  add_target(r, "q", *last.var_q, aq.target_variance);
  add_target(r, "p", *last.var_p, ap.target_variance);
  r.metrics.emplace_back("final_cov_qp", *last.cov_qp);
  add_conservation_metrics(r, last);
}

void run_equilibrium(const ScenarioConfig& c, RunReport& r) {
  const SystemConfig& s = c.system;
  const double beta = c.thermo.inverse_temperature();
  const double kt = c.thermo.temperature();
  const Grid1D gq = axis_grid(c.grid.axis);
  const Grid1D gp = axis_grid(c.grid.p);
  const Spectrum sq = thermal_spectrum(hamiltonian(c, gq, Space::position), beta, c.stepping.states);
  const Spectrum sp = thermal_spectrum(hamiltonian(c, gp, Space::momentum), beta, c.stepping.states);

  const DensityField2D rho = phase_space_gibbs(sq, sp, beta);
  const DensityField gibbs_q = gibbs_density(make_ensemble(sq, beta));
  const DensityField gibbs_p = gibbs_density(make_ensemble(sp, beta));
  const Field mq = marginal_q(rho.rho);
  double deviation = 0.0;
  for (std::size_t i = 0; i < gq.n; ++i) deviation = std::max(deviation, std::fabs(mq[i] - gibbs_q.rho[i]));

  const PhaseSpaceState state{rho, 0};
  const FreeEnergyBackend bq = canonical_backend(gibbs_q, kt);
  const FreeEnergyBackend bp = canonical_backend(gibbs_p, kt);
  const Record rec = make_record(state, bq, bp);
  r.records.push_back(rec);
  r.final_phase_density = rho;

  OscillatorParams op{s.mass, s.omega, s.hbar, c.thermo.friction, beta};
  const double coth_q = stationary_dispersion(op);
  const double coth_p = coth_q * s.mass * s.mass * s.omega * s.omega;
  r.metrics.emplace_back("states", static_cast<double>(std::min(sq.count(), sp.count())));
  r.metrics.emplace_back("marginal_q_max_deviation", deviation);
  add_target(r, "q", *rec.var_q, coth_q);
  add_target(r, "p", *rec.var_p, coth_p);
  r.metrics.emplace_back("uncertainty_product", *rec.var_q * *rec.var_p);
  r.metrics.emplace_back("zero_point_product", 0.25 * s.hbar * s.hbar);
  r.metrics.emplace_back("mass", rec.mass);
}

void run_response(const ScenarioConfig& c, RunReport& r) {
  const SystemConfig& s = c.system;
  const OscillatorParams op{s.mass, s.omega, s.hbar, c.thermo.friction, c.thermo.inverse_temperature()};
  const double f = s.force;
  const ResponseSeries series = mean_response(op, [f](double) { return f; }, c.space.y0, c.stepping.t_end,
                                              c.stepping.dt);
  const double kappa = s.mass * s.omega * s.omega;

  Table table{"response.csv", {"time", "y"}, {}};
  table.rows.reserve(series.time.size());
  for (std::size_t i = 0; i < series.time.size(); ++i) table.rows.push_back({series.time[i], series.y[i]});
  r.tables.push_back(std::move(table));
  r.steps = series.time.size() - 1;

  r.metrics.emplace_back("z", op.z());
  r.metrics.emplace_back("friction_factor", quantum_friction_factor(op));
  r.metrics.emplace_back("expected_decay_time", response_time(op));
  r.metrics.emplace_back("classical_decay_time", op.friction / kappa);
  r.metrics.emplace_back("steady_state", f / kappa);
  r.metrics.emplace_back("final_y", series.y.back());
  if (series.y.front() != f / kappa) r.metrics.emplace_back("fitted_decay_time", fitted_decay_time(series, f / kappa));
}

void run_coth_sweep(const ScenarioConfig& c, RunReport& r) {
  const SystemConfig& s = c.system;
  const Grid1D g = axis_grid(c.grid.axis);
  const double beta_min = *std::min_element(c.thermo.betas.begin(), c.thermo.betas.end());
  const Spectrum spec = thermal_spectrum(hamiltonian(c, g, Space::position), beta_min, c.stepping.states);

  Table table{"coth_sweep.csv", {"beta", "eigen_variance", "formula_variance", "relative_error"}, {}};
  double worst = 0.0;
  for (double beta : c.thermo.betas) {
    const double eigen = variance(gibbs_density(make_ensemble(spec, beta)));
    const double formula = stationary_dispersion(OscillatorParams{s.mass, s.omega, s.hbar, c.thermo.friction, beta});
    const double rel = eigen / formula - 1.0;
    worst = std::max(worst, std::fabs(rel));
    table.rows.push_back({beta, eigen, formula, rel});
  }
  r.tables.push_back(std::move(table));
  r.metrics.emplace_back("states", static_cast<double>(spec.count()));
  r.metrics.emplace_back("max_relative_error", worst);
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config) {
  const auto problems = validate(config);
  if (!problems.empty()) throw ConfigError(problems, config.name);

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;
  report.config_echo = render_config(config);
  try {
    switch (config.task) {
      case Task::relax:
        if (config.space.space == Space::phase) {
          run_relax_phase(config, report);
        } else {
          run_relax_1d(config, report);
        }
        break;
      case Task::equilibrium:
        run_equilibrium(config, report);
        break;
      case Task::response:
        run_response(config, report);
        break;
      case Task::coth_sweep:
        run_coth_sweep(config, report);
        break;
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("scenario '" + config.name + "' (task " + std::string(to_string(config.task)) +
                             "): " + e.what());
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace thermorelax::scenario
