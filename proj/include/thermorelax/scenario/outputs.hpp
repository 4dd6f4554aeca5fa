// File outputs of a run. Numbers are written with 17 significant digits so
// identical reports give identical bytes.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "thermorelax/scenario/runner.hpp"

namespace thermorelax::scenario {

inline constexpr const char* kTimeseriesHeader = "time,mean_q,var_q,mean_p,var_p,cov_qp,mass,min_rho,lyapunov";

/// "%.17g"
std::string format_number(double v);

std::string timeseries_csv(const RunReport& report);
std::string density_csv(const RunReport& report);
std::string table_csv(const Table& table);
std::string summary_text(const RunReport& report);

/// Writes timeseries.csv, density_final.csv, any task tables and summary.txt
/// (as enabled in the config) into `directory`, creating it if needed.
/// Returns the written paths; throws std::runtime_error naming the path on
/// I/O failure.
std::vector<std::filesystem::path> emit_outputs(const RunReport& report, const std::filesystem::path& directory);

}  // namespace thermorelax::scenario
