#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "thermorelax/scenario/check.hpp"
#include "thermorelax/scenario/config.hpp"
#include "thermorelax/scenario/outputs.hpp"
#include "thermorelax/scenario/presets.hpp"
#include "thermorelax/scenario/runner.hpp"

using namespace thermorelax;
using namespace thermorelax::scenario;

namespace {

const char* kMinimal = R"(
[system]
potential = free

[space]
space = momentum

[thermo]
kT = 1

[grid]
lo = -10
hi = 10
n = 201

[stepping]
t_end = 0.5
)";

std::vector<std::string> problems_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  return std::any_of(problems.begin(), problems.end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("minimal config gets documented defaults") {
  const ScenarioConfig c = parse_config(kMinimal);
  CHECK(c.task == Task::relax);
  CHECK(c.stepping.safety == 0.5);
  CHECK(c.stepping.stride == 100);
  CHECK(c.stepping.entropy == EntropyForm::logarithmic);
  CHECK(c.thermo.backend == BackendKind::classical);
  CHECK(c.thermo.friction == 1.0);
  CHECK(c.outputs.timeseries);
  CHECK_FALSE(c.space.shift.has_value());
}

TEST_CASE("config errors name their key path") {
  SUBCASE("both temperatures") {
    const auto p = problems_of(with(kMinimal, "kT = 1", "kT = 1\nbeta = 1"));
    CHECK(mentions(p, "thermo.kT/thermo.beta"));
  }
  SUBCASE("too few nodes") {
    CHECK(mentions(problems_of(with(kMinimal, "n = 201", "n = 2")), "grid.n"));
  }
  SUBCASE("unknown keys and sections") {
    const auto p = problems_of(with(kMinimal, "[stepping]", "[extras]\ncolour = blue\n[stepping]\nsafty = 0.4"));
    CHECK(mentions(p, "extras: unknown section"));
    CHECK(mentions(p, "stepping.safty: unknown key"));
  }
  SUBCASE("every problem is reported") {
    std::string text = with(kMinimal, "kT = 1", "kT = -1\nfriction = zero");
    text = with(text, "t_end = 0.5", "t_end = 0.5\nsafety = 2");
    const auto p = problems_of(text);
    CHECK(p.size() >= 3);
    CHECK(mentions(p, "thermo.kT"));
    CHECK(mentions(p, "thermo.friction"));
    CHECK(mentions(p, "stepping.safety"));
  }
  SUBCASE("missing required keys") {
    const auto p = problems_of("[space]\nspace = position\n");
    CHECK(mentions(p, "grid.lo"));
    CHECK(mentions(p, "thermo.kT/thermo.beta"));
    CHECK(mentions(p, "stepping.t_end"));
  }
  SUBCASE("grid must bracket the equilibrium support") {
    const auto p = problems_of(with(kMinimal, "lo = -10\nhi = 10", "lo = -3\nhi = 3"));
    CHECK(mentions(p, "grid.lo/hi"));
  }
  SUBCASE("force on a momentum density") {
    CHECK(mentions(problems_of(with(kMinimal, "potential = free", "potential = free\nforce = 0.5")), "system.force"));
  }
  SUBCASE("duplicate key") {
    CHECK(mentions(problems_of(with(kMinimal, "kT = 1", "kT = 1\nkT = 2")), "thermo.kT: duplicate key"));
  }
}

TEST_CASE("phase-space configs") {
  const std::string kramers = find_preset("eq11_kramers").config_text;
  const ScenarioConfig c = parse_config(kramers);
  CHECK(c.stepping.entropy == EntropyForm::diffusion);

  // Centered reversible fluxes need enough dissipation per cell.
  const auto coarse = problems_of(with(with(kramers, "n = 121", "n = 41"), "p_n = 121", "p_n = 41"));
  CHECK(mentions(coarse, "cell Peclet number along q"));
  CHECK(mentions(coarse, "cell Peclet number along p"));
}

TEST_CASE("1D relaxation checks the cell Peclet number at the grid ends") {
  std::string text = with(kMinimal, "potential = free", "potential = double_well");
  text = with(text, "space = momentum", "space = position");
  text = with(text, "kT = 1", "kT = 0.5");
  text = with(text, "lo = -10\nhi = 10\nn = 201", "lo = -6\nhi = 6\nn = 241");
  CHECK(mentions(problems_of(text), "cell Peclet number at the grid ends"));
  CHECK(problems_of(with(text, "n = 241", "n = 2501")).empty());
}

TEST_CASE("render_config round-trips") {
  for (const Preset& p : presets()) {
    const ScenarioConfig a = parse_config(p.config_text);
    const std::string text = render_config(a);
    CHECK(render_config(parse_config(text)) == text);
  }
}

TEST_CASE("presets") {
  std::vector<std::string> names;
  for (const Preset& p : presets()) {
    names.push_back(p.name);
    CHECK_FALSE(p.description.empty());
    CHECK_NOTHROW(parse_config(p.config_text));
  }
  const std::vector<std::string> expected{"eq6_ou",       "eq7_smoluchowski", "eq8_response", "eq9_phase",
                                          "eq10_equilibrium", "eq11_kramers", "coth_sweep"};
  CHECK(names == expected);
  CHECK_THROWS_WITH_AS(find_preset("eq12"), doctest::Contains("eq6_ou"), std::invalid_argument);
}

TEST_CASE("run and emit outputs") {
  const ScenarioConfig c = parse_config(kMinimal);
  const RunReport a = run_scenario(c);
  CHECK(a.status == TerminationStatus::completed);
  CHECK(a.records.size() == a.steps / c.stepping.stride + 1);

  const auto dir = std::filesystem::temp_directory_path() / "thermorelax_test_outputs";
  std::filesystem::remove_all(dir);
  const auto written = emit_outputs(a, dir / "a");
  CHECK(written.size() == 3);

  const std::string ts = slurp(dir / "a" / "timeseries.csv");
  std::istringstream lines(ts);
  std::string line;
  std::getline(lines, line);
  CHECK(line == kTimeseriesHeader);
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // Momentum runs leave the q columns empty.
    CHECK(line.find(",,,") != std::string::npos);
    std::vector<std::string> cols;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) cols.push_back(cell);
    REQUIRE(cols.size() == 9);
    CHECK(std::fabs(std::stod(cols[6]) - 1.0) < 1e-9);
  }
  CHECK(rows == a.records.size());
  CHECK(slurp(dir / "a" / "density_final.csv").rfind("p,rho\n", 0) == 0);
  CHECK(slurp(dir / "a" / "summary.txt").find("status: completed") != std::string::npos);

  emit_outputs(run_scenario(c), dir / "b");
  for (const char* f : {"timeseries.csv", "density_final.csv"}) CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  std::filesystem::remove_all(dir);
}

TEST_CASE("number formatting round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("run errors carry the scenario name") {
  ScenarioConfig c = parse_config(kMinimal);
  c.name = "broken";
  c.grid.axis.n = 2;
  CHECK_THROWS_WITH(run_scenario(c), doctest::Contains("broken"));
}

TEST_CASE("classical phase-space scheme matches a direct Kramers discretization") {
  CHECK(kramers_reduction_residual(parse_config(find_preset("eq11_kramers").config_text)) < 1e-10);
}
