#include "thermorelax/scenario/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "thermorelax/oscillator.hpp"
#include "thermorelax/scenario/outputs.hpp"
#include "thermorelax/scenario/presets.hpp"

namespace thermorelax::scenario {

namespace {

ScenarioConfig from_preset(const std::string& name) { return parse_config(find_preset(name).config_text); }

ScenarioConfig renamed(ScenarioConfig c, std::string name) {
  c.name = std::move(name);
  return c;
}

ScenarioConfig bohm_config(const std::string& name, double kt, double half_width, std::size_t n) {
  ScenarioConfig c;
  c.name = name;
  c.task = Task::relax;
  c.space.space = Space::position;
  c.thermo.backend = BackendKind::bohm;
  c.thermo.kT = kt;
  c.grid.axis = AxisConfig{-half_width, half_width, n};
  c.stepping.t_end = 10.0;
  c.stepping.stride = 10000;
  return c;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

bool within(double value, double target, double rel) { return std::fabs(value / target - 1.0) <= rel; }

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct Runs {
  std::map<std::string, RunReport> reports;
  std::vector<std::string> errors;

  const RunReport* find(const std::string& name) const {
    const auto it = reports.find(name);
    return it == reports.end() ? nullptr : &it->second;
  }
};

Runs run_all(const std::vector<ScenarioConfig>& configs, const std::filesystem::path& dir) {
  Runs runs;
  for (const ScenarioConfig& c : configs) {
    try {
      RunReport r = run_scenario(c);
      emit_outputs(r, dir / c.name);
      runs.reports.emplace(c.name, std::move(r));
    } catch (const std::exception& e) {
      runs.errors.push_back(c.name + ": " + e.what());
    }
  }
  return runs;
}

// Evaluates one criterion, turning a missing report or metric into a failure.
template <class Fn>
CriterionResult judge(int id, std::string title, Fn fn) {
  CriterionResult r{id, std::move(title), false, {}};
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

const RunReport& need(const Runs& runs, const std::string& name) {
  if (const RunReport* r = runs.find(name)) return *r;
  for (const std::string& e : runs.errors) {
    if (e.rfind(name + ":", 0) == 0) throw std::runtime_error(e);
  }
  throw std::runtime_error("scenario " + name + " did not run");
}

}  // namespace

std::vector<ScenarioConfig> check_scenarios() {
  std::vector<ScenarioConfig> out;
  for (const Preset& p : presets()) out.push_back(parse_config(p.config_text));

  ScenarioConfig ou1 = renamed(from_preset("eq6_ou"), "check_ou_t1");
  ou1.stepping.t_end = 1.0;
  out.push_back(ou1);

  ScenarioConfig cold = renamed(from_preset("eq10_equilibrium"), "check_equilibrium_cold");
  cold.thermo.beta = 50.0;
  out.push_back(cold);

  ScenarioConfig classical = renamed(from_preset("eq8_response"), "check_response_classical");
  classical.thermo.beta = 1e-7;
  out.push_back(classical);

  ScenarioConfig canonical;
  canonical.name = "check_canonical";
  canonical.space.space = Space::position;
  canonical.thermo.backend = BackendKind::canonical;
  canonical.thermo.beta = 2.0;
  canonical.grid.axis = AxisConfig{-8.0, 8.0, 401};
  canonical.stepping.t_end = 20.0;
  out.push_back(canonical);

  out.push_back(bohm_config("check_bohm", 0.5, 7.5, 151));
  out.push_back(bohm_config("check_bohm_cold", 1e-3, 6.0, 121));
  out.push_back(bohm_config("check_bohm_hot", 100.0, 81.0, 401));
  return out;
}

double kramers_reduction_residual(const ScenarioConfig& config) {
  const SystemConfig& s = config.system;
  const double kt = config.thermo.temperature();
  const double b = config.thermo.friction;
  const Grid1D gq = build_grid(config.grid.axis.lo, config.grid.axis.hi, config.grid.axis.n);
  const Grid1D gp = build_grid(config.grid.p.lo, config.grid.p.hi, config.grid.p.n);
  const Grid2D g{gq, gp};
  const double k = s.mass * s.omega * s.omega;
  const auto force = [&](double q) { return -(k * q - s.force); };

  const FreeEnergyBackend bq =
      classical_backend(Field::sample(gq, [&](double q) { return 0.5 * k * q * q - s.force * q; }), kt);
  const FreeEnergyBackend bp = classical_backend(Field::sample(gp, [&](double p) { return p * p / (2.0 * s.mass); }), kt);
  Field2D mb = Field2D::sample(g, [&](double q, double p) {
    return std::exp(-(0.5 * k * q * q - s.force * q + p * p / (2.0 * s.mass)) / kt);
  });
  const PhaseSpaceState state{shifted_density(normalized(DensityField2D{std::move(mb), 0.0}), 1.0, 0.5), 0};
  const KineticCoefficients coeff{b, s.mass, 0.0};
  StepperOptions options;
  options.entropy = EntropyForm::diffusion;
  options.execution = kernels::Execution::serial;
  const Field2D scheme = phase_space_rate(state, bq, bp, coeff, options).total;
  const double dt = options.safety * stable_dt(state, bq, bp, coeff);

  // Direct face fluxes: q-flux rho p/m, p-flux rho F(q) - b (rho p/m + kT d rho/dp).
  const auto rho = [&](std::size_t i, std::size_t j) { return state.density.rho(i, j); };
  const auto jq = [&](std::size_t i, std::size_t j) { return 0.5 * (rho(i, j) + rho(i + 1, j)) * gp.node(j) / s.mass; };
  const auto jp = [&](std::size_t i, std::size_t j) {
    const double avg = 0.5 * (rho(i, j) + rho(i, j + 1));
    const double p_face = 0.5 * (gp.node(j) + gp.node(j + 1));
    return avg * force(gq.node(i)) - b * (avg * p_face / s.mass + kt * (rho(i, j + 1) - rho(i, j)) / gp.h);
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < gq.n; ++i) {
    const double wq = (i == 0 || i + 1 == gq.n) ? 0.5 * gq.h : gq.h;
    for (std::size_t j = 0; j < gp.n; ++j) {
      const double wp = (j == 0 || j + 1 == gp.n) ? 0.5 * gp.h : gp.h;
      const double ql = i > 0 ? jq(i - 1, j) : 0.0;
      const double qr = i + 1 < gq.n ? jq(i, j) : 0.0;
      const double pl = j > 0 ? jp(i, j - 1) : 0.0;
      const double pr = j + 1 < gp.n ? jp(i, j) : 0.0;
      const double direct = -((qr - ql) / wq + (pr - pl) / wp);
      worst = std::max(worst, std::fabs(direct - scheme(i, j)) * dt);
    }
  }
  return worst;
}

std::vector<CriterionResult> run_check(const CheckOptions& options) {
  const std::vector<ScenarioConfig> configs = check_scenarios();
  const Runs runs = run_all(configs, options.out_dir / "run1");
  std::vector<CriterionResult> results;

  results.push_back(judge(1, "eigensolver harmonic levels", [](CriterionResult& r) {
    const Grid1D g = build_grid(-12.0, 12.0, 2001);
    const Spectrum s = solve_spectrum(discretize_position_hamiltonian(g, 1.0, 1.0, HarmonicPotential{}), 10);
    double worst = 0.0;
    for (std::size_t n = 0; n < 10; ++n) worst = std::max(worst, std::fabs(s.energies[n] - (n + 0.5)));
    r.passed = worst < 1e-3;
    r.detail = fmt("max |E_n - (n+1/2)| = %.3e (tol 1e-3)", worst);
  }));

  results.push_back(judge(2, "coth dispersion law", [&](CriterionResult& r) {
    const RunReport& rep = need(runs, "coth_sweep");
    const double worst = rep.metric("max_relative_error");
    double at2 = 0.0;
    for (const auto& row : rep.tables.at(0).rows) {
      if (row[0] == 2.0) at2 = row[1];
    }
    r.passed = worst < 5e-3 && within(at2, 0.656518, 5e-3);
    r.detail = fmt("max rel err %.3e (tol 5e-3); beta=2 variance %.6f", worst, at2);
  }));

  results.push_back(judge(3, "momentum-space OU relaxation", [&](CriterionResult& r) {
    const double mean1 = need(runs, "check_ou_t1").metric("final_mean_p");
    const double var20 = need(runs, "eq6_ou").metric("final_var_p");
    const double expected = 2.0 * std::exp(-1.0);
    r.passed = within(mean1, expected, 0.01) && within(var20, 1.0, 0.01);
    r.detail = fmt("mean(1) = %.6f vs %.6f; var(20) = %.6f vs 1", mean1, expected, var20);
  }));

  results.push_back(judge(4, "Smoluchowski stationary variance", [&](CriterionResult& r) {
    const RunReport& rep = need(runs, "eq7_smoluchowski");
    const double err = rep.metric("relative_error_var_q");
    r.passed = std::fabs(err) < 0.01;
    r.detail = fmt("var = %.6f vs %.6f (rel %.2e)", rep.metric("final_var_q"), rep.metric("target_var_q"), err);
  }));

  results.push_back(judge(5, "Kramers Maxwell-Boltzmann equilibrium", [&](CriterionResult& r) {
    const RunReport& rep = need(runs, "eq11_kramers");
    const double eq = rep.metric("relative_error_var_q");
    const double ep = rep.metric("relative_error_var_p");
    const double cov = rep.metric("final_cov_qp");
    r.passed = std::fabs(eq) < 0.02 && std::fabs(ep) < 0.02 && std::fabs(cov) < 0.02;
    r.detail = fmt("rel err <q^2> %.2e, <p^2> %.2e; <qp> = %.2e", eq, ep, cov);
  }));

  results.push_back(judge(6, "phase-space scheme reduces to classical Kramers", [&](CriterionResult& r) {
    const double res = kramers_reduction_residual(from_preset("eq11_kramers"));
    r.passed = res < 1e-10;
    r.detail = fmt("max per-node per-step difference %.3e (tol 1e-10)", res);
  }));

  results.push_back(judge(7, "phase-space equilibrium", [&](CriterionResult& r) {
    const double dev = need(runs, "eq10_equilibrium").metric("marginal_q_max_deviation");
    const RunReport& cold = need(runs, "check_equilibrium_cold");
    const double product = cold.metric("uncertainty_product");
    const double target = cold.metric("zero_point_product");
    r.passed = dev < 1e-6 && within(product, target, 0.01);
    r.detail = fmt("marginal deviation %.2e (tol 1e-6); cold <q2><p2> = %.6f vs %.6f", dev, product, target);
  }));

  results.push_back(judge(8, "quantum friction decay time", [&](CriterionResult& r) {
    const RunReport& q = need(runs, "eq8_response");
    const RunReport& c = need(runs, "check_response_classical");
    const double dq = std::fabs(q.metric("fitted_decay_time") - q.metric("expected_decay_time"));
    const double dc = std::fabs(c.metric("fitted_decay_time") - c.metric("classical_decay_time"));
    r.passed = dq < 1e-4 && dc < 1e-6;
    r.detail = fmt("|tau - b z coth z/k| = %.2e (tol 1e-4); classical %.2e (tol 1e-6)", dq, dc);
  }));

  results.push_back(judge(9, "canonical-backend quantum relaxation", [&](CriterionResult& r) {
    const RunReport& rep = need(runs, "check_canonical");
    const double var = rep.metric("final_var_q");
    const double rise = rep.metric("max_lyapunov_rise");
    r.passed = rep.status == TerminationStatus::completed && within(var, 0.656518, 0.01) && rise <= 1e-10;
    r.detail = fmt("var = %.6f vs 0.656518; max relative-entropy rise %.2e", var, rise);
  }));

  results.push_back(judge(10, "conservation and positivity", [&](CriterionResult& r) {
    double mass = 0.0;
    double worst_negative = 0.0;
    int relax_runs = 0;
    std::string bad;
    for (const auto& [name, rep] : runs.reports) {
      if (rep.config.task != Task::relax) continue;
      ++relax_runs;
      if (rep.status != TerminationStatus::completed) bad += " " + name;
      mass = std::max(mass, rep.metric("max_mass_error"));
      double peak = 0.0;
      if (rep.final_density) {
        for (double v : rep.final_density->rho.values()) peak = std::max(peak, v);
      } else if (rep.final_phase_density) {
        for (double v : rep.final_phase_density->rho.values()) peak = std::max(peak, v);
      }
      worst_negative = std::min(worst_negative, rep.metric("min_rho") / peak);
    }
    // An oversized step must be rejected rather than clipped.
    const ScenarioConfig ou = from_preset("eq6_ou");
    const Grid1D g = build_grid(ou.grid.axis.lo, ou.grid.axis.hi, ou.grid.axis.n);
    const FreeEnergyBackend be = classical_backend(Field::sample(g, [](double p) { return 0.5 * p * p; }), 1.0);
    const DensityField start = shifted_density(
        normalized(DensityField{Field::sample(g, [](double p) { return std::exp(-0.5 * p * p); }), 0.0}), 2.0);
    const RelaxationState state{start, Space::momentum, 0};
    const KineticCoefficients coeff{1.0, 1.0, {}};
    bool rejected = false;
    try {
      drift_diffusion_step(state, be, coeff, 1000.0 * stable_dt(state, be, coeff));
    } catch (const StepRejected&) {
      rejected = true;
    }
    r.passed = relax_runs > 0 && bad.empty() && mass < 1e-9 && worst_negative >= -1e-12 && rejected;
    r.detail = fmt("%g runs: max |mass-1| %.2e, min rho/max %.2e", relax_runs, mass, worst_negative) +
               (rejected ? "; oversized step rejected" : "; oversized step NOT rejected") +
               (bad.empty() ? "" : "; incomplete:" + bad);
  }));

  results.push_back(judge(11, "Bohm-backend stationary variance", [&](CriterionResult& r) {
    const RunReport& mid = need(runs, "check_bohm");
    const RunReport& cold = need(runs, "check_bohm_cold");
    const RunReport& hot = need(runs, "check_bohm_hot");
    const double var = mid.metric("final_var_q");
    const auto coth = [](double kt) {
      return stationary_dispersion(OscillatorParams{1.0, 1.0, 1.0, 1.0, 1.0 / kt});
    };
    const double ec = cold.metric("final_var_q") / coth(1e-3) - 1.0;
    const double eh = hot.metric("final_var_q") / coth(100.0) - 1.0;
    const bool done = mid.status == TerminationStatus::completed && cold.status == TerminationStatus::completed &&
                      hot.status == TerminationStatus::completed;
    r.passed = done && within(var, 0.809017, 0.01) && std::fabs(ec) < 0.01 && std::fabs(eh) < 0.01;
    r.detail = fmt("kT=0.5 var %.6f vs 0.809017; coth-limit rel err cold %.2e, hot %.2e", var, ec, eh) +
               (done ? "" : "; a run did not complete");
  }));

  results.push_back(judge(12, "determinism", [&](CriterionResult& r) {
    if (!options.verify_determinism) {
      r.detail = "skipped";
      return;
    }
    const Runs again = run_all(configs, options.out_dir / "run2");
    std::size_t compared = 0;
    std::string differing;
    for (const ScenarioConfig& c : configs) {
      const auto dir1 = options.out_dir / "run1" / c.name;
      if (!std::filesystem::exists(dir1)) continue;
      for (const auto& entry : std::filesystem::directory_iterator(dir1)) {
        if (entry.path().extension() != ".csv") continue;
        const auto twin = options.out_dir / "run2" / c.name / entry.path().filename();
        ++compared;
        if (read_bytes(entry.path()) != read_bytes(twin)) differing += " " + c.name + "/" + entry.path().filename().string();
      }
    }
    r.passed = compared > 0 && differing.empty() && again.errors.empty();
    r.detail = fmt("%g CSV files compared", static_cast<double>(compared)) +
               (differing.empty() ? ", all byte-identical" : "; differing:" + differing);
  }));

  return results;
}

std::string format_check_table(const std::vector<CriterionResult>& results) {
  std::ostringstream o;
  int passed = 0;
  for (const CriterionResult& r : results) {
    char head[96];
    std::snprintf(head, sizeof head, "%-4s %2d  %-48s ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str());
    o << head << r.detail << "\n";
    passed += r.passed ? 1 : 0;
  }
  o << passed << "/" << results.size() << " criteria passed\n";
  return o.str();
}

}  // namespace thermorelax::scenario
