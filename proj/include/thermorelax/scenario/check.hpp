// End-to-end acceptance table for `--check`: runs the presets plus a few
// auxiliary configurations and judges each criterion from their reports.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "thermorelax/scenario/config.hpp"
#include "thermorelax/scenario/runner.hpp"

namespace thermorelax::scenario {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  std::filesystem::path out_dir = "check_out";
  /// Runs every scenario a second time and compares the CSV bytes.
  bool verify_determinism = true;
};

/// Every configuration the check runs, presets first.
std::vector<ScenarioConfig> check_scenarios();

/// Runs the scenarios into out_dir/run1 (and out_dir/run2) and evaluates all
/// twelve criteria.
std::vector<CriterionResult> run_check(const CheckOptions& options = {});

/// Fixed-width PASS/FAIL table, one line per criterion.
std::string format_check_table(const std::vector<CriterionResult>& results);

/// Max |rate difference| * dt between the classical-backend phase-space scheme
/// (no configuration diffusion) and a direct discretization of the classical
/// phase-space equation with analytic drifts p/m and U'(q), at one state.
double kramers_reduction_residual(const ScenarioConfig& config);

}  // namespace thermorelax::scenario
