// Executes a parsed scenario and collects everything the outputs need.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermorelax/equilibrium.hpp"
#include "thermorelax/relaxation.hpp"
#include "thermorelax/scenario/config.hpp"

namespace thermorelax::scenario {

/// Extra CSV written next to the standard outputs (coth_sweep.csv, response.csv).
struct Table {
  std::string file_name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  ScenarioConfig config;
  std::string config_echo;
  std::vector<Record> records;
  std::optional<DensityField> final_density;
  std::optional<DensityField2D> final_phase_density;
  std::vector<Table> tables;
  /// Named acceptance-relevant numbers, in insertion order.
  std::vector<std::pair<std::string, double>> metrics;
  double wall_time = 0.0;  ///< seconds; reported on stdout only
  std::size_t steps = 0;
  TerminationStatus status = TerminationStatus::completed;
  std::string message;

  /// Value of a metric; throws std::out_of_range when absent.
  double metric(const std::string& name) const;
};

RunReport run_scenario(const ScenarioConfig& config);

/// Smallest eigenstate count (doubling from 64) whose thermal tail at `beta`
/// is resolved, or exactly `states` when nonzero.
Spectrum thermal_spectrum(const HamiltonianMatrix& h, double beta, std::size_t states = 0);

}  // namespace thermorelax::scenario
