#include "thermorelax/kernels.hpp"

#include <cstdint>

namespace thermorelax::kernels {

namespace {

// Below this many values the OpenMP team costs more than it saves.
constexpr std::size_t kParallelThreshold = 4096;

inline double face_flux_1d(const DriftDiffusion1D& in, std::size_t i) {
  const double avg = 0.5 * (in.rho[i] + in.rho[i + 1]);
  return -in.mobility * avg * (in.drive[i + 1] - in.drive[i]) / in.h -
         in.diffusion * (in.rho[i + 1] - in.rho[i]) / in.h;
}

inline double cell_width(std::size_t i, std::size_t n, double h) {
  return (i == 0 || i + 1 == n) ? 0.5 * h : h;
}

// Same stencils as thermorelax::gradient.
inline double derivative_p(std::span<const double> f, const Grid2D& g, std::size_t i, std::size_t j) {
  const std::size_t n = g.p.n;
  const double* row = f.data() + i * n;
  const double inv2h = 0.5 / g.p.h;
  if (j == 0) return (-3.0 * row[0] + 4.0 * row[1] - row[2]) * inv2h;
  if (j + 1 == n) return (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) * inv2h;
  return (row[j + 1] - row[j - 1]) * inv2h;
}

inline double derivative_q(std::span<const double> f, const Grid2D& g, std::size_t i, std::size_t j) {
  const std::size_t n = g.q.n;
  const std::size_t s = g.p.n;
  const double* col = f.data() + j;
  const double inv2h = 0.5 / g.q.h;
  if (i == 0) return (-3.0 * col[0] + 4.0 * col[s] - col[2 * s]) * inv2h;
  if (i + 1 == n) return (3.0 * col[(n - 1) * s] - 4.0 * col[(n - 2) * s] + col[(n - 3) * s]) * inv2h;
  return (col[(i + 1) * s] - col[(i - 1) * s]) * inv2h;
}

inline double flux_x(const PhaseSpaceFlux& in, std::size_t i, std::size_t j) {
  const std::size_t k = in.grid.index(i, j);
  return in.rho[k] * derivative_p(in.drive_p, in.grid, i, j) +
         in.diffusion_coefficient * derivative_p(in.rho, in.grid, i, j);
}

inline double flux_y(const PhaseSpaceFlux& in, std::size_t i, std::size_t j) {
  const std::size_t k = in.grid.index(i, j);
  return -(in.rho[k] * derivative_q(in.drive_q, in.grid, i, j) +
           in.diffusion_coefficient * derivative_q(in.rho, in.grid, i, j));
}

// Dissipative part of the q-face flux between (i, j) and (i+1, j).
inline double dissipative_q(const PhaseSpaceFlux& in, std::size_t i, std::size_t j) {
  const std::size_t a = in.grid.index(i, j);
  const std::size_t b = in.grid.index(i + 1, j);
  const double avg = 0.5 * (in.rho[a] + in.rho[b]);
  return -in.mobility_q * (avg * (in.drive_q[b] - in.drive_q[a]) + in.diffusion_coefficient * (in.rho[b] - in.rho[a])) /
         in.grid.q.h;
}

inline double dissipative_p(const PhaseSpaceFlux& in, std::size_t i, std::size_t j) {
  const std::size_t a = in.grid.index(i, j);
  const std::size_t b = a + 1;
  const double avg = 0.5 * (in.rho[a] + in.rho[b]);
  return -in.mobility_p * (avg * (in.drive_p[b] - in.drive_p[a]) + in.diffusion_coefficient * (in.rho[b] - in.rho[a])) /
         in.grid.p.h;
}

inline double combine(double antisymmetric, double dissipative, const PhaseSpaceFlux& in) {
  return (in.antisymmetric ? antisymmetric : 0.0) + (in.dissipative ? dissipative : 0.0);
}

inline double node_rate(double q_left, double q_right, double p_left, double p_right, double wq, double wp) {
  return -((q_right - q_left) / wq + (p_right - p_left) / wp);
}

}  // namespace

void drift_diffusion_rate_serial(const DriftDiffusion1D& in, std::span<double> rate) {
  const std::size_t n = in.rho.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? face_flux_1d(in, i - 1) : 0.0;
    const double right = i + 1 < n ? face_flux_1d(in, i) : 0.0;
    rate[i] = -(right - left) / cell_width(i, n, in.h);
  }
}

void drift_diffusion_rate_parallel(const DriftDiffusion1D& in, std::span<double> rate,
                                   std::vector<double>& faces) {
  const std::size_t n = in.rho.size();
  faces.resize(n + 1);
  const auto count = static_cast<std::int64_t>(n);
  const bool team = n >= kParallelThreshold;
#pragma omp parallel if (team)
  {
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i <= count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      faces[u] = (u == 0 || u == n) ? 0.0 : face_flux_1d(in, u - 1);
    }
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      rate[u] = -(faces[u + 1] - faces[u]) / cell_width(u, n, in.h);
    }
  }
}

void drift_diffusion_rate(const DriftDiffusion1D& in, std::span<double> rate, std::vector<double>& faces,
                          Execution exec) {
  if (exec == Execution::serial) {
    drift_diffusion_rate_serial(in, rate);
  } else {
    drift_diffusion_rate_parallel(in, rate, faces);
  }
}

void phase_space_rate_serial(const PhaseSpaceFlux& in, std::span<double> rate) {
  const Grid2D& g = in.grid;
  const std::size_t nq = g.q.n;
  const std::size_t np = g.p.n;
  for (std::size_t i = 0; i < nq; ++i) {
    const double wq = cell_width(i, nq, g.q.h);
    for (std::size_t j = 0; j < np; ++j) {
      const double wp = cell_width(j, np, g.p.h);
      double q_left = 0.0;
      double q_right = 0.0;
      double p_left = 0.0;
      double p_right = 0.0;
      if (i > 0) q_left = combine(0.5 * (flux_x(in, i - 1, j) + flux_x(in, i, j)), dissipative_q(in, i - 1, j), in);
      if (i + 1 < nq) q_right = combine(0.5 * (flux_x(in, i, j) + flux_x(in, i + 1, j)), dissipative_q(in, i, j), in);
      if (j > 0) p_left = combine(0.5 * (flux_y(in, i, j - 1) + flux_y(in, i, j)), dissipative_p(in, i, j - 1), in);
      if (j + 1 < np) p_right = combine(0.5 * (flux_y(in, i, j) + flux_y(in, i, j + 1)), dissipative_p(in, i, j), in);
      rate[g.index(i, j)] = node_rate(q_left, q_right, p_left, p_right, wq, wp);
    }
  }
}

void phase_space_rate_parallel(const PhaseSpaceFlux& in, std::span<double> rate, PhaseSpaceWorkspace& ws) {
  const Grid2D& g = in.grid;
  const std::size_t nq = g.q.n;
  const std::size_t np = g.p.n;
  ws.x.resize(g.size());
  ws.y.resize(g.size());
  // face_q row i holds the face between q-rows i and i+1; face_p column j the
  // face between p-columns j and j+1 (stride np - 1).
  ws.face_q.resize((nq - 1) * np);
  ws.face_p.resize(nq * (np - 1));
  const auto rows = static_cast<std::int64_t>(nq);
  const bool team = g.size() >= kParallelThreshold;

#pragma omp parallel if (team)
  {
#pragma omp for schedule(static)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      for (std::size_t j = 0; j < np; ++j) {
        ws.x[g.index(i, j)] = flux_x(in, i, j);
        ws.y[g.index(i, j)] = flux_y(in, i, j);
      }
    }
#pragma omp for schedule(static)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      if (i + 1 < nq) {
        for (std::size_t j = 0; j < np; ++j) {
          ws.face_q[i * np + j] =
              combine(0.5 * (ws.x[g.index(i, j)] + ws.x[g.index(i + 1, j)]), dissipative_q(in, i, j), in);
        }
      }
      for (std::size_t j = 0; j + 1 < np; ++j) {
        ws.face_p[i * (np - 1) + j] =
            combine(0.5 * (ws.y[g.index(i, j)] + ws.y[g.index(i, j + 1)]), dissipative_p(in, i, j), in);
      }
    }
#pragma omp for schedule(static)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const double wq = cell_width(i, nq, g.q.h);
      for (std::size_t j = 0; j < np; ++j) {
        const double wp = cell_width(j, np, g.p.h);
        const double q_left = i > 0 ? ws.face_q[(i - 1) * np + j] : 0.0;
        const double q_right = i + 1 < nq ? ws.face_q[i * np + j] : 0.0;
        const double p_left = j > 0 ? ws.face_p[i * (np - 1) + j - 1] : 0.0;
        const double p_right = j + 1 < np ? ws.face_p[i * (np - 1) + j] : 0.0;
        rate[g.index(i, j)] = node_rate(q_left, q_right, p_left, p_right, wq, wp);
      }
    }
  }
}

void phase_space_rate(const PhaseSpaceFlux& in, std::span<double> rate, PhaseSpaceWorkspace& ws,
                      Execution exec) {
  if (exec == Execution::serial) {
    phase_space_rate_serial(in, rate);
  } else {
    phase_space_rate_parallel(in, rate, ws);
  }
}

void axpy_update(std::span<const double> rho, std::span<const double> rate, double dt,
                 std::span<double> out, Execution exec) {
  const auto n = static_cast<std::int64_t>(rho.size());
  const bool team = exec == Execution::parallel && rho.size() >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (team)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = rho[u] + dt * rate[u];
  }
}

}  // namespace thermorelax::kernels
