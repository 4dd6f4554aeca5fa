#include "thermorelax/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace thermorelax {

namespace {

struct ShiftedSum {
  double sum = 0.0;           // sum_n exp(-beta (E_n - E_0))
  double tail = 0.0;          // k * exp(-beta (E_{k-1} - E_0)) / sum
  std::vector<double> terms;  // exp(-beta (E_n - E_0))
};

ShiftedSum shifted_sum(const Spectrum& spectrum, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be positive and finite");
  }
  if (spectrum.count() == 0) throw std::invalid_argument("empty spectrum");
  ShiftedSum s;
  const double e0 = spectrum.energies.front();
  s.terms.reserve(spectrum.count());
  for (double e : spectrum.energies) {
    s.terms.push_back(std::exp(-beta * (e - e0)));
    s.sum += s.terms.back();
  }
  if (!spectrum.complete) {
    s.tail = static_cast<double>(spectrum.count()) * s.terms.back() / s.sum;
  }
  return s;
}

void check_tail(const ShiftedSum& s, double beta, std::size_t k, double tolerance) {
  if (s.tail > tolerance) {
    std::ostringstream msg;
    msg << "insufficient truncation: " << k << " states leave an estimated tail mass of " << s.tail
        << " at beta = " << beta << " (tolerance " << tolerance << "); request more eigenstates";
    throw TruncationError(msg.str());
  }
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double partition_function(const Spectrum& spectrum, double beta, double tolerance) {
  const ShiftedSum s = shifted_sum(spectrum, beta);
  check_tail(s, beta, spectrum.count(), tolerance);
  return std::exp(-beta * spectrum.energies.front()) * s.sum;
}

CanonicalEnsemble make_ensemble(Spectrum spectrum, double beta, double tolerance) {
  const ShiftedSum s = shifted_sum(spectrum, beta);
  check_tail(s, beta, spectrum.count(), tolerance);
  CanonicalEnsemble ens;
  ens.beta = beta;
  ens.partition = std::exp(-beta * spectrum.energies.front()) * s.sum;
  ens.truncation_bound = s.tail;
  ens.weights.reserve(s.terms.size());
  for (double t : s.terms) ens.weights.push_back(t / s.sum);
  ens.spectrum = std::move(spectrum);
  return ens;
}

DensityField gibbs_density(const CanonicalEnsemble& ensemble) {
  const Spectrum& spec = ensemble.spectrum;
  if (spec.states.size() != spec.count()) {
    throw std::invalid_argument("gibbs_density needs eigenfunctions for every level");
  }
  const Grid1D& grid = spec.states.front().grid();
  std::vector<double> rho(grid.n, 0.0);
  for (std::size_t k = 0; k < spec.count(); ++k) {
    const double w = ensemble.weights[k];
    const auto phi = spec.states[k].values();
    for (std::size_t i = 0; i < grid.n; ++i) rho[i] += w * phi[i] * phi[i];
  }
  return DensityField{Field(grid, std::move(rho)), 0.0};
}

Field2D phase_space_term(const Field& phi_q, const Field& chi_p, double weight) {
  const Grid2D grid{phi_q.grid(), chi_p.grid()};
  Field2D out(grid);
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    const double a = weight * phi_q[i] * phi_q[i];
    for (std::size_t j = 0; j < grid.p.n; ++j) out(i, j) = a * chi_p[j] * chi_p[j];
  }
  return out;
}

DensityField2D phase_space_gibbs(const Spectrum& spec_q, const Spectrum& spec_p, double beta,
                                 double tolerance) {
  const std::size_t k = std::min(spec_q.count(), spec_p.count());
  if (k == 0) throw std::invalid_argument("empty spectrum");
  for (std::size_t n = 0; n < k; ++n) {
    if (std::fabs(spec_q.energies[n] - spec_p.energies[n]) > 1e-3) {
      std::ostringstream msg;
      msg << "spectra mismatch: level " << n << " has E_q = " << spec_q.energies[n]
          << " but E_p = " << spec_p.energies[n];
      throw std::invalid_argument(msg.str());
    }
  }
  Spectrum paired;
  paired.energies.assign(spec_q.energies.begin(), spec_q.energies.begin() + static_cast<std::ptrdiff_t>(k));
  paired.complete = spec_q.complete && spec_p.complete && spec_q.count() == spec_p.count();
  const ShiftedSum s = shifted_sum(paired, beta);
  check_tail(s, beta, k, tolerance);

  const Grid2D grid{spec_q.states.front().grid(), spec_p.states.front().grid()};
  Field2D rho(grid);
  std::vector<double> pq(grid.q.n);
  for (std::size_t n = 0; n < k; ++n) {
    const double w = s.terms[n] / s.sum;
    const auto phi = spec_q.states[n].values();
    const auto chi = spec_p.states[n].values();
    for (std::size_t i = 0; i < grid.q.n; ++i) pq[i] = w * phi[i] * phi[i];
    for (std::size_t i = 0; i < grid.q.n; ++i) {
      for (std::size_t j = 0; j < grid.p.n; ++j) rho(i, j) += pq[i] * chi[j] * chi[j];
    }
  }
  return DensityField2D{std::move(rho), 0.0};
}

double default_log_floor(std::span<const double> rho) {
  double vmax = 0.0;
  for (double v : rho) vmax = std::max(vmax, v);
  return vmax > 0.0 ? kDefaultLogFloorFraction * vmax : std::numeric_limits<double>::min();
}

ThermalForce thermal_force(const DensityField& rho, double temperature, double floor) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (!(floor > 0.0)) throw std::invalid_argument("log floor must be positive");
  const Grid1D& grid = rho.grid();
  ThermalForce out{Field(grid), 0};
  Field logs(grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (rho.rho[i] < floor) ++out.clamped_nodes;
    logs[i] = std::log(std::max(rho.rho[i], floor));
  }
  gradient(logs.values(), grid.h, out.force.values());
  for (double& f : out.force.values()) f *= -temperature;
  return out;
}

ThermalForce thermal_force(const DensityField& rho, double temperature) {
  return thermal_force(rho, temperature, default_log_floor(rho.rho.values()));
}

double density_moment(const DensityField& rho, int q_power, int p_power) {
  if (q_power < 0 || p_power < 0) throw std::invalid_argument("moment powers must be non-negative");
  if (p_power > 0) throw std::invalid_argument("p_power > 0 requested on a 1D density");
  const Grid1D& grid = rho.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) total += grid.weight(i) * rho.rho[i] * ipow(grid.node(i), q_power);
  return total;
}

double density_moment(const DensityField2D& rho, int q_power, int p_power) {
  if (q_power < 0 || p_power < 0) throw std::invalid_argument("moment powers must be non-negative");
  const Grid2D& grid = rho.grid();
  std::vector<double> pw(grid.p.n);
  for (std::size_t j = 0; j < grid.p.n; ++j) pw[j] = grid.p.weight(j) * ipow(grid.p.node(j), p_power);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < grid.p.n; ++j) row += pw[j] * rho.rho(i, j);
    total += grid.q.weight(i) * ipow(grid.q.node(i), q_power) * row;
  }
  return total;
}

Field marginal_q(const Field2D& rho) {
  const Grid2D& grid = rho.grid();
  Field out(grid.q);
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    out[i] = integrate(rho.values().subspan(i * grid.p.n, grid.p.n), grid.p);
  }
  return out;
}

Field marginal_p(const Field2D& rho) {
  const Grid2D& grid = rho.grid();
  Field out(grid.p);
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    const double w = grid.q.weight(i);
    for (std::size_t j = 0; j < grid.p.n; ++j) out[j] += w * rho(i, j);
  }
  return out;
}

double variance(const DensityField& rho) {
  const double mass = density_moment(rho, 0);
  const double mean = density_moment(rho, 1) / mass;
  return density_moment(rho, 2) / mass - mean * mean;
}

}  // namespace thermorelax
