#include "thermorelax/scenario/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace thermorelax::scenario {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::relax:
      return "relax";
    case Task::response:
      return "response";
    case Task::equilibrium:
      return "equilibrium";
    case Task::coth_sweep:
      return "coth_sweep";
  }
  return "unknown";
}

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::free:
      return "free";
    case PotentialKind::harmonic:
      return "harmonic";
    case PotentialKind::double_well:
      return "double_well";
  }
  return "unknown";
}

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string render_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g{
      {"scenario", {"name", "task"}},
      {"system", {"potential", "mass", "omega", "hbar", "force", "a2", "a4"}},
      {"space", {"space", "shift", "shift_p", "y0"}},
      {"thermo", {"backend", "kT", "beta", "friction", "position_mobility", "betas"}},
      {"grid", {"lo", "hi", "n", "p_lo", "p_hi", "p_n"}},
      {"stepping", {"t_end", "safety", "stride", "entropy", "execution", "dt", "states"}},
      {"outputs", {"directory", "timeseries", "density", "summary"}},
  };
  return g;
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find_first_of("#;");
      const std::string line = trim(std::string_view(raw).substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          problems.push_back("line " + std::to_string(line_no) + ": malformed section header '" + line + "'");
          continue;
        }
        section = trim(std::string_view(line).substr(1, line.size() - 2));
        if (!grammar().count(section)) {
          problems.push_back(section + ": unknown section (line " + std::to_string(line_no) + ")");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
        continue;
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (section.empty()) {
        problems.push_back(key + ": key outside any section (line " + std::to_string(line_no) + ")");
        continue;
      }
      const std::string path = section + "." + key;
      const auto known = grammar().find(section);
      if (known != grammar().end() && !known->second.count(key)) {
        problems.push_back(path + ": unknown key");
        continue;
      }
      if (entries.count(path)) {
        problems.push_back(path + ": duplicate key (line " + std::to_string(line_no) + ")");
        continue;
      }
      entries[path] = Entry{value, line_no, false};
    }
  }

  bool has(const std::string& path) const { return entries.count(path) > 0; }

  std::optional<std::string> text(const std::string& path) {
    auto it = entries.find(path);
    if (it == entries.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  std::optional<double> real(const std::string& path) {
    const auto t = text(path);
    if (!t) return std::nullopt;
    double v = 0.0;
    const char* end = t->data() + t->size();
    const auto [ptr, ec] = std::from_chars(t->data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      problems.push_back(path + ": expected a finite number, got '" + *t + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::size_t> count(const std::string& path) {
    const auto t = text(path);
    if (!t) return std::nullopt;
    long long v = 0;
    const char* end = t->data() + t->size();
    const auto [ptr, ec] = std::from_chars(t->data(), end, v);
    if (ec != std::errc() || ptr != end || v < 0) {
      problems.push_back(path + ": expected a non-negative integer, got '" + *t + "'");
      return std::nullopt;
    }
    return static_cast<std::size_t>(v);
  }

  std::optional<bool> flag(const std::string& path) {
    const auto t = text(path);
    if (!t) return std::nullopt;
    if (*t == "true" || *t == "yes" || *t == "1") return true;
    if (*t == "false" || *t == "no" || *t == "0") return false;
    problems.push_back(path + ": expected true or false, got '" + *t + "'");
    return std::nullopt;
  }

  template <class Enum, class Parse>
  std::optional<Enum> choice(const std::string& path, Parse parse) {
    const auto t = text(path);
    if (!t) return std::nullopt;
    try {
      return parse(*t);
    } catch (const std::invalid_argument& e) {
      problems.push_back(path + ": " + e.what());
      return std::nullopt;
    }
  }

  std::vector<double> list(const std::string& path) {
    std::vector<double> out;
    const auto t = text(path);
    if (!t) return out;
    std::istringstream in(*t);
    std::string item;
    while (std::getline(in, item, ',')) {
      const std::string s = trim(item);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        problems.push_back(path + ": expected a comma-separated list of numbers, got '" + *t + "'");
        return {};
      }
      out.push_back(v);
    }
    return out;
  }

  std::vector<std::string> problems;

 private:
  std::map<std::string, Entry> entries;
};

Task task_from_string(std::string_view s) {
  if (s == "relax") return Task::relax;
  if (s == "response") return Task::response;
  if (s == "equilibrium") return Task::equilibrium;
  if (s == "coth_sweep") return Task::coth_sweep;
  throw std::invalid_argument("unknown task '" + std::string(s) + "' (relax, response, equilibrium, coth_sweep)");
}

PotentialKind potential_from_string(std::string_view s) {
  if (s == "free") return PotentialKind::free;
  if (s == "harmonic") return PotentialKind::harmonic;
  if (s == "double_well") return PotentialKind::double_well;
  throw std::invalid_argument("unknown potential '" + std::string(s) + "' (free, harmonic, double_well)");
}

kernels::Execution execution_from_string(std::string_view s) {
  if (s == "serial") return kernels::Execution::serial;
  if (s == "parallel") return kernels::Execution::parallel;
  throw std::invalid_argument("unknown execution '" + std::string(s) + "' (serial, parallel)");
}

bool uses_grid(Task task) { return task != Task::response; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems, const std::string& scenario)
    : std::invalid_argument(
          (scenario.empty() ? std::string("invalid config") : "invalid config for scenario '" + scenario + "'") +
          ":\n  " + join(problems, "\n  ")),
      problems_(std::move(problems)) {}

double equilibrium_std(const ScenarioConfig& c, Space axis) {
  const SystemConfig& s = c.system;
  const double kt = c.thermo.temperature();
  const bool quantum = c.thermo.backend != BackendKind::classical;
  const double z = 0.5 * c.thermo.inverse_temperature() * s.hbar * s.omega;
  if (axis == Space::momentum) {
    if (quantum && s.potential == PotentialKind::harmonic && z > 1e-6) {
      return std::sqrt(0.5 * s.mass * s.hbar * s.omega / std::tanh(z));
    }
    return std::sqrt(s.mass * kt);
  }
  switch (s.potential) {
    case PotentialKind::harmonic: {
      const double k = s.mass * s.omega * s.omega;
      if (c.thermo.backend == BackendKind::bohm) {
        return std::sqrt((kt + std::sqrt(kt * kt + s.hbar * s.hbar * s.omega * s.omega)) / (2.0 * k));
      }
      if (quantum && z > 1e-6) return std::sqrt(0.5 * s.hbar / (s.mass * s.omega) / std::tanh(z));
      return std::sqrt(kt / k);
    }
    case PotentialKind::double_well:
      // Width of one well: curvature 4 a2 at the minima.
      return std::sqrt(kt / (4.0 * s.a2));
    case PotentialKind::free:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

namespace {

// Centre and half-extent of the equilibrium support along an axis, before the
// 8-sigma margin.
std::pair<double, double> support(const ScenarioConfig& c, Space axis) {
  const SystemConfig& s = c.system;
  if (axis == Space::momentum) return {0.0, 0.0};
  if (s.potential == PotentialKind::harmonic) return {s.force / (s.mass * s.omega * s.omega), 0.0};
  if (s.potential == PotentialKind::double_well) return {0.0, std::sqrt(s.a2 / (2.0 * s.a4))};
  return {0.0, 0.0};
}

void check_axis(const ScenarioConfig& c, const AxisConfig& a, Space axis, const std::string& prefix,
                std::vector<std::string>& problems) {
  if (a.n < 3) problems.push_back("grid." + prefix + "n: need at least 3 nodes, got " + std::to_string(a.n));
  if (!(a.hi > a.lo)) {
    problems.push_back("grid." + prefix + "hi: must exceed grid." + prefix + "lo");
    return;
  }
  const double sigma = equilibrium_std(c, axis);
  if (!std::isfinite(sigma)) return;
  const auto [centre, half] = support(c, axis);
  const double need_lo = centre - half - 8.0 * sigma;
  const double need_hi = centre + half + 8.0 * sigma;
  if (a.lo > need_lo || a.hi < need_hi) {
    problems.push_back("grid." + prefix + "lo/" + prefix + "hi: [" + render_double(a.lo) + ", " + render_double(a.hi) +
                       "] does not bracket 8 equilibrium standard deviations [" + render_double(need_lo) + ", " +
                       render_double(need_hi) + "]");
  }
}

// The reversible phase-space fluxes are centered, so each axis needs enough
// dissipation: cell Peclet number |velocity| h / (kT L) <= 2 over the grid,
// with the classical drift velocities p/m along q and U'(q) along p.
void check_peclet(const ScenarioConfig& c, std::vector<std::string>& problems) {
  const SystemConfig& s = c.system;
  const double kt = c.thermo.temperature();
  const double hq = (c.grid.axis.hi - c.grid.axis.lo) / static_cast<double>(c.grid.axis.n - 1);
  const double hp = (c.grid.p.hi - c.grid.p.lo) / static_cast<double>(c.grid.p.n - 1);
  const double lqq = c.thermo.position_mobility.value_or(1.0 / c.thermo.friction);
  const double lpp = c.thermo.friction;

  const double vq = std::max(std::fabs(c.grid.p.lo), std::fabs(c.grid.p.hi)) / s.mass;
  const auto slope = [&](double q) {
    switch (s.potential) {
      case PotentialKind::harmonic:
        return std::fabs(s.mass * s.omega * s.omega * q - s.force);
      case PotentialKind::double_well:
        return std::fabs(4.0 * s.a4 * q * q * q - 2.0 * s.a2 * q);
      case PotentialKind::free:
        break;
    }
    return 0.0;
  };
  const double vp = std::max(slope(c.grid.axis.lo), slope(c.grid.axis.hi));

  const double pe_q = lqq > 0.0 ? vq * hq / (kt * lqq) : std::numeric_limits<double>::infinity();
  const double pe_p = vp * hp / (kt * lpp);
  if (pe_q > 2.0) {
    problems.push_back("grid.n: cell Peclet number along q is " + render_double(pe_q) +
                       " (> 2); refine q, raise kT or thermo.position_mobility");
  }
  if (pe_p > 2.0) {
    problems.push_back("grid.p_n: cell Peclet number along p is " + render_double(pe_p) +
                       " (> 2); refine p, raise kT or thermo.friction");
  }
}

// The same limit holds in 1D, where the mobility scales drift and diffusion
// alike: |dE/dx| h / kT <= 2 at the grid ends. Quadratic energies use the
// equilibrium width, kT |x - centre| / sigma^2, so quantum widths count.
void check_peclet_1d(const ScenarioConfig& c, std::vector<std::string>& problems) {
  const SystemConfig& s = c.system;
  const AxisConfig& a = c.grid.axis;
  const double kt = c.thermo.temperature();
  const double h = (a.hi - a.lo) / static_cast<double>(a.n - 1);
  const auto slope = [&](double x) {
    if (c.space.space == Space::position && s.potential == PotentialKind::double_well) {
      return std::fabs(4.0 * s.a4 * x * x * x - 2.0 * s.a2 * x);
    }
    const double sigma = equilibrium_std(c, c.space.space);
    if (!std::isfinite(sigma)) return 0.0;
    return kt * std::fabs(x - support(c, c.space.space).first) / (sigma * sigma);
  };
  const double pe = std::max(slope(a.lo), slope(a.hi)) * h / kt;
  if (pe > 2.0) {
    problems.push_back("grid.n: cell Peclet number at the grid ends is " + render_double(pe) +
                       " (> 2); refine the grid or raise kT");
  }
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> problems;
  const auto positive = [&](double v, const char* path) {
    if (!(v > 0.0)) problems.push_back(std::string(path) + ": must be positive, got " + render_double(v));
  };
  positive(c.system.mass, "system.mass");
  positive(c.system.omega, "system.omega");
  positive(c.system.hbar, "system.hbar");
  positive(c.thermo.friction, "thermo.friction");
  if (c.system.potential == PotentialKind::double_well) {
    positive(c.system.a2, "system.a2");
    positive(c.system.a4, "system.a4");
  }
  if (c.thermo.kT && c.thermo.beta) {
    problems.push_back("thermo.kT/thermo.beta: give exactly one of kT and beta, not both");
  } else if (!c.thermo.kT && !c.thermo.beta && c.task != Task::coth_sweep) {
    problems.push_back("thermo.kT/thermo.beta: missing; give exactly one of kT and beta");
  }
  if (c.thermo.kT) positive(*c.thermo.kT, "thermo.kT");
  if (c.thermo.beta) positive(*c.thermo.beta, "thermo.beta");
  if (c.thermo.position_mobility && *c.thermo.position_mobility < 0.0) {
    problems.push_back("thermo.position_mobility: must be non-negative");
  }
  if (!(c.stepping.safety > 0.0 && c.stepping.safety <= 1.0)) {
    problems.push_back("stepping.safety: must lie in (0, 1], got " + render_double(c.stepping.safety));
  }
  if (c.stepping.stride == 0) problems.push_back("stepping.stride: must be positive");
  if ((c.task == Task::relax || c.task == Task::response) && !(c.stepping.t_end > 0.0)) {
    problems.push_back("stepping.t_end: missing or not positive");
  }
  if (c.task == Task::response && !(c.stepping.dt > 0.0)) problems.push_back("stepping.dt: must be positive");
  if (c.task == Task::coth_sweep) {
    if (c.thermo.betas.empty()) problems.push_back("thermo.betas: coth_sweep needs a list of inverse temperatures");
    for (double b : c.thermo.betas) {
      if (!(b > 0.0)) problems.push_back("thermo.betas: entries must be positive, got " + render_double(b));
    }
  }
  if (c.task != Task::relax && c.system.potential != PotentialKind::harmonic) {
    problems.push_back("system.potential: task " + std::string(to_string(c.task)) + " needs a harmonic potential");
  }
  if (c.task == Task::relax && c.system.potential == PotentialKind::free && c.space.space != Space::momentum) {
    problems.push_back("system.potential: a free particle has no equilibrium in " +
                       std::string(to_string(c.space.space)) + " space");
  }
  if (c.task == Task::relax && c.thermo.backend != BackendKind::classical && c.space.space != Space::position &&
      c.system.potential == PotentialKind::double_well) {
    problems.push_back("system.potential: double_well has no local momentum-space Hamiltonian");
  }
  if (c.task == Task::relax && c.system.force != 0.0 && c.space.space == Space::momentum) {
    problems.push_back("system.force: a linear force does not act on a momentum-space density");
  } else if (c.task == Task::relax && c.system.force != 0.0 && c.space.space == Space::phase &&
             c.thermo.backend != BackendKind::classical) {
    problems.push_back("system.force: momentum-space Hamiltonians take no linear force");
  }

  if (problems.empty() && uses_grid(c.task)) {
    ScenarioConfig probe = c;
    if (c.task == Task::coth_sweep) {
      probe.thermo.kT.reset();
      probe.thermo.beta = *std::min_element(c.thermo.betas.begin(), c.thermo.betas.end());
      probe.thermo.backend = BackendKind::canonical;
    }
    if (c.task == Task::equilibrium) probe.thermo.backend = BackendKind::canonical;
    const bool phase = c.task == Task::equilibrium || (c.task == Task::relax && c.space.space == Space::phase);
    const Space axis = phase ? Space::position : c.space.space;
    check_axis(probe, c.grid.axis, axis, "", problems);
    if (phase) check_axis(probe, c.grid.p, Space::momentum, "p_", problems);
    if (problems.empty() && c.task == Task::relax) {
      if (c.space.space == Space::phase) {
        check_peclet(c, problems);
      } else {
        check_peclet_1d(c, problems);
      }
    }
  }
  return problems;
}

ScenarioConfig parse_config(std::string_view text) {
  Reader r(text);
  ScenarioConfig c;

  if (auto v = r.text("scenario.name")) c.name = *v;
  if (auto v = r.choice<Task>("scenario.task", task_from_string)) c.task = *v;

  if (auto v = r.choice<PotentialKind>("system.potential", potential_from_string)) c.system.potential = *v;
  if (auto v = r.real("system.mass")) c.system.mass = *v;
  if (auto v = r.real("system.omega")) c.system.omega = *v;
  if (auto v = r.real("system.hbar")) c.system.hbar = *v;
  if (auto v = r.real("system.force")) c.system.force = *v;
  if (auto v = r.real("system.a2")) c.system.a2 = *v;
  if (auto v = r.real("system.a4")) c.system.a4 = *v;

  const bool needs_space = c.task == Task::relax;
  if (auto v = r.choice<Space>("space.space", space_from_string)) {
    c.space.space = *v;
  } else if (needs_space && !r.has("space.space")) {
    r.problems.push_back("space.space: missing required key (momentum, position or phase)");
  }
  c.space.shift = r.real("space.shift");
  if (auto v = r.real("space.shift_p")) c.space.shift_p = *v;
  if (auto v = r.real("space.y0")) c.space.y0 = *v;

  if (auto v = r.choice<BackendKind>("thermo.backend", backend_from_string)) c.thermo.backend = *v;
  c.thermo.kT = r.real("thermo.kT");
  c.thermo.beta = r.real("thermo.beta");
  if (auto v = r.real("thermo.friction")) c.thermo.friction = *v;
  c.thermo.position_mobility = r.real("thermo.position_mobility");
  c.thermo.betas = r.list("thermo.betas");

  if (uses_grid(c.task)) {
    for (const char* key : {"lo", "hi", "n"}) {
      if (!r.has(std::string("grid.") + key)) r.problems.push_back(std::string("grid.") + key + ": missing required key");
    }
    const bool phase = c.task == Task::equilibrium || (c.task == Task::relax && c.space.space == Space::phase);
    if (phase) {
      for (const char* key : {"p_lo", "p_hi", "p_n"}) {
        if (!r.has(std::string("grid.") + key)) {
          r.problems.push_back(std::string("grid.") + key + ": missing required key for phase space");
        }
      }
    }
  }
  if (auto v = r.real("grid.lo")) c.grid.axis.lo = *v;
  if (auto v = r.real("grid.hi")) c.grid.axis.hi = *v;
  if (auto v = r.count("grid.n")) c.grid.axis.n = *v;
  if (auto v = r.real("grid.p_lo")) c.grid.p.lo = *v;
  if (auto v = r.real("grid.p_hi")) c.grid.p.hi = *v;
  if (auto v = r.count("grid.p_n")) c.grid.p.n = *v;

  if (auto v = r.real("stepping.t_end")) c.stepping.t_end = *v;
  if (auto v = r.real("stepping.safety")) c.stepping.safety = *v;
  if (auto v = r.count("stepping.stride")) c.stepping.stride = *v;
  // Phase space defaults to the diffusion form: its reversible fluxes stay
  // positive in the far tails, where the logarithmic form undershoots.
  if (c.space.space == Space::phase) c.stepping.entropy = EntropyForm::diffusion;
  if (auto v = r.choice<EntropyForm>("stepping.entropy", entropy_form_from_string)) c.stepping.entropy = *v;
  if (auto v = r.choice<kernels::Execution>("stepping.execution", execution_from_string)) c.stepping.execution = *v;
  if (auto v = r.real("stepping.dt")) c.stepping.dt = *v;
  if (auto v = r.count("stepping.states")) c.stepping.states = *v;

  if (auto v = r.text("outputs.directory")) c.outputs.directory = *v;
  if (auto v = r.flag("outputs.timeseries")) c.outputs.timeseries = *v;
  if (auto v = r.flag("outputs.density")) c.outputs.density = *v;
  if (auto v = r.flag("outputs.summary")) c.outputs.summary = *v;

  // Values that failed to parse keep their defaults, so constraint problems
  // that mention a failed key would only repeat it.
  std::vector<std::string> problems = std::move(r.problems);
  std::vector<std::string> failed;
  for (const std::string& p : problems) {
    const auto colon = p.find(':');
    if (colon != std::string::npos && p.compare(0, 5, "line ") != 0) failed.push_back(p.substr(0, colon));
  }
  for (std::string& p : validate(c)) {
    const bool repeats = std::any_of(failed.begin(), failed.end(),
                                     [&](const std::string& key) { return p.find(key) != std::string::npos; });
    if (!repeats) problems.push_back(std::move(p));
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

std::string render_config(const ScenarioConfig& c) {
  std::ostringstream o;
  const auto num = [](double v) { return render_double(v); };
  o << "[scenario]\nname = " << c.name << "\ntask = " << to_string(c.task) << "\n\n";
  o << "[system]\npotential = " << to_string(c.system.potential) << "\nmass = " << num(c.system.mass)
    << "\nomega = " << num(c.system.omega) << "\nhbar = " << num(c.system.hbar) << "\nforce = " << num(c.system.force)
    << "\na2 = " << num(c.system.a2) << "\na4 = " << num(c.system.a4) << "\n\n";
  o << "[space]\nspace = " << to_string(c.space.space) << "\n";
  if (c.space.shift) o << "shift = " << num(*c.space.shift) << "\n";
  o << "shift_p = " << num(c.space.shift_p) << "\ny0 = " << num(c.space.y0) << "\n\n";
  o << "[thermo]\nbackend = " << to_string(c.thermo.backend) << "\n";
  if (c.thermo.kT) o << "kT = " << num(*c.thermo.kT) << "\n";
  if (c.thermo.beta) o << "beta = " << num(*c.thermo.beta) << "\n";
  o << "friction = " << num(c.thermo.friction) << "\n";
  if (c.thermo.position_mobility) o << "position_mobility = " << num(*c.thermo.position_mobility) << "\n";
  if (!c.thermo.betas.empty()) {
    o << "betas = ";
    for (std::size_t i = 0; i < c.thermo.betas.size(); ++i) o << (i ? ", " : "") << num(c.thermo.betas[i]);
    o << "\n";
  }
  o << "\n";
  if (uses_grid(c.task)) {
    o << "[grid]\nlo = " << num(c.grid.axis.lo) << "\nhi = " << num(c.grid.axis.hi) << "\nn = " << c.grid.axis.n
      << "\n";
    if (c.grid.p.n > 0) {
      o << "p_lo = " << num(c.grid.p.lo) << "\np_hi = " << num(c.grid.p.hi) << "\np_n = " << c.grid.p.n << "\n";
    }
    o << "\n";
  }
  o << "[stepping]\nt_end = " << num(c.stepping.t_end) << "\nsafety = " << num(c.stepping.safety)
    << "\nstride = " << c.stepping.stride << "\nentropy = " << to_string(c.stepping.entropy)
    << "\nexecution = " << (c.stepping.execution == kernels::Execution::serial ? "serial" : "parallel")
    << "\ndt = " << num(c.stepping.dt) << "\nstates = " << c.stepping.states << "\n\n";
  o << "[outputs]\ndirectory = " << c.outputs.directory << "\ntimeseries = " << (c.outputs.timeseries ? "true" : "false")
    << "\ndensity = " << (c.outputs.density ? "true" : "false") << "\nsummary = " << (c.outputs.summary ? "true" : "false")
    << "\n";
  return o.str();
}

}  // namespace thermorelax::scenario
