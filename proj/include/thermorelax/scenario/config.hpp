// Scenario configuration: an INI-style text format with fixed sections.
//
//   [scenario]  name, task = relax | response | equilibrium | coth_sweep
//   [system]    potential = free | harmonic | double_well, mass, omega, hbar,
//               force, a2, a4
//   [space]     space = momentum | position | phase, shift, shift_p, y0
//   [thermo]    backend = classical | bohm | canonical, kT or beta, friction,
//               position_mobility, betas (comma list, coth_sweep)
//   [grid]      lo, hi, n (coordinate axis; q in phase space), p_lo, p_hi, p_n
//   [stepping]  t_end, safety, stride, entropy, execution, dt, states
//   [outputs]   directory, timeseries, density, summary
//
// '#' and ';' start comments. Unknown sections or keys are errors, and every
// problem found is reported, each prefixed by its key path.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thermorelax/free_energy.hpp"
#include "thermorelax/kernels.hpp"
#include "thermorelax/relaxation.hpp"

namespace thermorelax::scenario {

enum class Task { relax, response, equilibrium, coth_sweep };

std::string_view to_string(Task task);

enum class PotentialKind { free, harmonic, double_well };

std::string_view to_string(PotentialKind kind);

struct SystemConfig {
  PotentialKind potential = PotentialKind::harmonic;
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double force = 0.0;
  double a2 = 1.0;
  double a4 = 0.25;
};

struct SpaceConfig {
  Space space = Space::position;
  std::optional<double> shift;  ///< default: one equilibrium standard deviation
  double shift_p = 0.0;
  double y0 = 1.0;
};

struct ThermoConfig {
  BackendKind backend = BackendKind::classical;
  std::optional<double> kT;
  std::optional<double> beta;
  double friction = 1.0;
  std::optional<double> position_mobility;
  std::vector<double> betas;

  double temperature() const { return kT ? *kT : 1.0 / *beta; }
  double inverse_temperature() const { return beta ? *beta : 1.0 / *kT; }
};

struct AxisConfig {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
};

struct GridConfig {
  AxisConfig axis;  ///< q in phase space
  AxisConfig p;
};

struct SteppingConfig {
  double t_end = 0.0;
  double safety = 0.5;
  std::size_t stride = 100;
  EntropyForm entropy = EntropyForm::logarithmic;  ///< parse_config defaults phase space to diffusion
  kernels::Execution execution = kernels::Execution::parallel;
  double dt = 1e-3;        ///< response task only
  std::size_t states = 0;  ///< eigenstates; 0 grows the count until the thermal tail is resolved
};

struct OutputsConfig {
  std::string directory = "out";
  bool timeseries = true;
  bool density = true;
  bool summary = true;
};

struct ScenarioConfig {
  std::string name = "unnamed";
  Task task = Task::relax;
  SystemConfig system;
  SpaceConfig space;
  ThermoConfig thermo;
  GridConfig grid;
  SteppingConfig stepping;
  OutputsConfig outputs;
};

class ConfigError : public std::invalid_argument {
 public:
  /// `scenario`, when given, names the run in the message.
  explicit ConfigError(std::vector<std::string> problems, const std::string& scenario = {});
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses and validates; throws ConfigError listing every problem.
ScenarioConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(render_config(c)) reproduces c.
std::string render_config(const ScenarioConfig& config);

/// Equilibrium standard deviation along the configured 1D axis (or q for
/// phase space), used for default shifts and the grid-support check.
double equilibrium_std(const ScenarioConfig& config, Space axis);

/// Lists constraint violations of an already-typed config.
std::vector<std::string> validate(const ScenarioConfig& config);

}  // namespace thermorelax::scenario
