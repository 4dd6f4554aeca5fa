// Closed-form harmonic-oscillator laws: thermal dispersion, quantum friction
// and the damped mean response.
#pragma once

#include <functional>
#include <vector>

namespace thermorelax {

/// Below this z the series limits replace coth/sinh.
inline constexpr double kSmallZ = 1e-6;

struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double friction = 1.0;  ///< classical b
  double beta = 1.0;

  double z() const { return 0.5 * beta * hbar * omega; }
  void validate() const;
};

/// (hbar / 2 m omega) coth z; kT / m omega^2 for z < kSmallZ.
double stationary_dispersion(const OscillatorParams& params);

/// b z coth z; b for z < kSmallZ.
double quantum_friction_factor(const OscillatorParams& params);

/// b_ref sinh(z) / z, so that b(z -> 0) = b_ref.
double low_temperature_friction(double b_ref, const OscillatorParams& params);

struct ResponseSeries {
  std::vector<double> time;
  std::vector<double> y;
};

/// RK4 integration of (b z coth z) dy/dt + m omega^2 y = f(t) from y(0) = y0.
/// The last step is shortened to land on t_end.
ResponseSeries mean_response(const OscillatorParams& params, const std::function<double(double)>& force, double y0,
                             double t_end, double dt);

/// b z coth z / (m omega^2).
double response_time(const OscillatorParams& params);

/// Least-squares slope of ln|y - y_inf| against t, returned as -1/slope.
/// Samples with |y - y_inf| below 1e-300 are skipped.
double fitted_decay_time(const ResponseSeries& series, double y_inf = 0.0);

}  // namespace thermorelax
