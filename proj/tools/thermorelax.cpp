// Command-line front end: run a config or preset, sweep a directory of
// configs, list presets, or print the acceptance table.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thermorelax/scenario/check.hpp"
#include "thermorelax/scenario/config.hpp"
#include "thermorelax/scenario/outputs.hpp"
#include "thermorelax/scenario/presets.hpp"
#include "thermorelax/scenario/runner.hpp"

namespace fs = std::filesystem;
using namespace thermorelax;
using namespace thermorelax::scenario;

namespace {

constexpr int kRunFailed = 1;
constexpr int kBadInput = 2;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs one scenario and writes its outputs; returns the console report.
std::string run_one(const ScenarioConfig& config, const fs::path& out, int& status) {
  std::ostringstream log;
  const RunReport report = run_scenario(config);
  const auto files = emit_outputs(report, out);
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", report.wall_time);
  log << config.name << ": " << to_string(report.status) << ", " << report.steps << " steps, " << wall << " s\n";
  if (!report.message.empty()) log << "  " << report.message << "\n";
  for (const auto& [name, value] : report.metrics) log << "  " << name << " = " << format_number(value) << "\n";
  for (const auto& f : files) log << "  wrote " << f.string() << "\n";
  if (report.status != TerminationStatus::completed) status = kRunFailed;
  return log.str();
}

int sweep(const fs::path& dir, const fs::path& out) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".cfg" || ext == ".ini" || ext == ".conf")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .cfg/.ini/.conf files in " << dir.string() << "\n";
    return kBadInput;
  }

  std::vector<std::string> logs(files.size());
  std::vector<int> status(files.size(), 0);
  const auto count = static_cast<long>(files.size());
  // Configs run concurrently; each keeps its kernels serial and writes to its
  // own directory.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      ScenarioConfig c = parse_config(read_text(files[k]));
      c.stepping.execution = kernels::Execution::serial;
      logs[k] = run_one(c, out / files[k].stem(), status[k]);
    } catch (const ConfigError& e) {
      logs[k] = files[k].string() + ": " + e.what() + "\n";
      status[k] = kBadInput;
    } catch (const std::exception& e) {
      logs[k] = files[k].string() + ": " + e.what() + "\n";
      status[k] = kRunFailed;
    }
  }
  for (const auto& l : logs) std::cout << l;
  return *std::max_element(status.begin(), status.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic relaxation of quantum and classical densities"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string preset;
  std::string sweep_dir;
  std::string out_dir;
  bool list = false;
  bool check = false;
  app.add_option("--preset", preset, "Run a built-in scenario");
  app.add_option("--out", out_dir, "Output directory (default: the config's outputs.directory)");
  app.add_flag("--list-presets", list, "List built-in scenarios");
  app.add_option("--sweep", sweep_dir, "Run every config in a directory, concurrently")->check(CLI::ExistingDirectory);
  app.add_flag("--check", check, "Run the acceptance scenarios and print a PASS/FAIL table");

  auto* run = app.add_subcommand("run", "Run a scenario config file");
  std::string config_path;
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  const int modes = static_cast<int>(!preset.empty()) + static_cast<int>(!sweep_dir.empty()) + static_cast<int>(list) +
                    static_cast<int>(check) + static_cast<int>(run->parsed());
  if (modes != 1) {
    std::cerr << "choose exactly one of: run <config>, --preset, --list-presets, --sweep, --check\n"
              << app.help();
    return kBadInput;
  }

  try {
    if (list) {
      for (const Preset& p : presets()) std::cout << p.name << "  " << p.description << "\n";
      return 0;
    }
    if (check) {
      CheckOptions options;
      if (!out_dir.empty()) options.out_dir = out_dir;
      const auto results = run_check(options);
      std::cout << format_check_table(results);
      const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
      return ok ? 0 : kRunFailed;
    }
    if (!sweep_dir.empty()) return sweep(sweep_dir, out_dir.empty() ? fs::path("out") : fs::path(out_dir));

    const std::string text = run->parsed() ? read_text(config_path) : find_preset(preset).config_text;
    const ScenarioConfig config = parse_config(text);
    int status = 0;
    std::cout << run_one(config, out_dir.empty() ? fs::path(config.outputs.directory) : fs::path(out_dir), status);
    return status;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRunFailed;
  }
}
