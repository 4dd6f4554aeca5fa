#include "thermorelax/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thermorelax {

void OscillatorParams::validate() const {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(mass)) throw std::invalid_argument("oscillator mass must be positive");
  if (!positive(omega)) throw std::invalid_argument("oscillator omega must be positive");
  if (!positive(hbar)) throw std::invalid_argument("oscillator hbar must be positive");
  if (!positive(friction)) throw std::invalid_argument("oscillator friction must be positive");
  if (!positive(beta)) throw std::invalid_argument("oscillator beta must be positive");
}

double stationary_dispersion(const OscillatorParams& params) {
  params.validate();
  const double z = params.z();
  const double stiffness = params.mass * params.omega * params.omega;
  if (z < kSmallZ) return 1.0 / (params.beta * stiffness);
  return params.hbar / (2.0 * params.mass * params.omega) / std::tanh(z);
}

double quantum_friction_factor(const OscillatorParams& params) {
  params.validate();
  const double z = params.z();
  if (z < kSmallZ) return params.friction;
  return params.friction * z / std::tanh(z);
}

double low_temperature_friction(double b_ref, const OscillatorParams& params) {
  params.validate();
  if (!(b_ref > 0.0)) throw std::invalid_argument("reference friction must be positive");
  const double z = params.z();
  if (z < kSmallZ) return b_ref;
  return b_ref * std::sinh(z) / z;
}

double response_time(const OscillatorParams& params) {
  return quantum_friction_factor(params) / (params.mass * params.omega * params.omega);
}

ResponseSeries mean_response(const OscillatorParams& params, const std::function<double(double)>& force, double y0,
                             double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  const double c = quantum_friction_factor(params);
  const double k = params.mass * params.omega * params.omega;
  const auto rhs = [&](double t, double y) { return (force(t) - k * y) / c; };

  ResponseSeries out;
  double t = 0.0;
  double y = y0;
  out.time.push_back(t);
  out.y.push_back(y);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t s = 0; s < steps; ++s) {
    const double next = std::min(t_end, static_cast<double>(s + 1) * dt);
    const double h = next - t;
    const double k1 = rhs(t, y);
    const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = rhs(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = next;
    out.time.push_back(t);
    out.y.push_back(y);
  }
  return out;
}

double fitted_decay_time(const ResponseSeries& series, double y_inf) {
  double n = 0.0, st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
  for (std::size_t i = 0; i < series.time.size(); ++i) {
    const double d = std::fabs(series.y[i] - y_inf);
    if (d < 1e-300) continue;
    const double t = series.time[i];
    const double l = std::log(d);
    n += 1.0;
    st += t;
    sl += l;
    stt += t * t;
    stl += t * l;
  }
  const double denom = n * stt - st * st;
  if (n < 2.0 || denom <= 0.0) throw std::invalid_argument("need at least two distinct samples to fit a decay");
  const double slope = (n * stl - st * sl) / denom;
  if (!(slope < 0.0)) throw std::invalid_argument("series does not decay");
  return -1.0 / slope;
}

}  // namespace thermorelax
