// Flux-divergence kernels for the conservative relaxation schemes.
//
// Nodes sit on the grid points; node i owns the dual cell of width w_i
// (h inside, h/2 at the ends), so the trapezoid integral of rho is exactly
// conserved by any set of face fluxes. Boundary faces carry zero flux.
//
// Each kernel has a serial reference implementation (per-node formulation)
// and an OpenMP implementation (staged face arrays). Both perform the same
// floating-point operations per value, so their outputs agree bitwise and do
// not depend on the thread count.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thermorelax/numerics.hpp"

namespace thermorelax::kernels {

enum class Execution { serial, parallel };

/// 1D face flux J_{i+1/2} = -L * avg(rho) * (drive_{i+1} - drive_i)/h
///                          - D * (rho_{i+1} - rho_i)/h.
struct DriftDiffusion1D {
  std::span<const double> rho;
  std::span<const double> drive;  ///< F (log form) or Phi (diffusion form)
  double mobility = 1.0;
  double diffusion = 0.0;         ///< kT * mobility in diffusion form, 0 in log form
  double h = 1.0;
};

/// rate_i = -(J_{i+1/2} - J_{i-1/2}) / w_i
void drift_diffusion_rate_serial(const DriftDiffusion1D& in, std::span<double> rate);
void drift_diffusion_rate_parallel(const DriftDiffusion1D& in, std::span<double> rate,
                                   std::vector<double>& faces);
void drift_diffusion_rate(const DriftDiffusion1D& in, std::span<double> rate, std::vector<double>& faces,
                          Execution exec);

/// Phase-space rate with q outer / p inner storage.
///
/// Antisymmetric (reversible) part, centered: the q-flux carries
///   X = rho * D_p(drive_p) + c * D_p(rho),
/// the p-flux carries Y = -(rho * D_q(drive_q) + c * D_q(rho)),
/// each averaged onto faces. Dissipative part per axis as in 1D with
/// mobilities L_qq and L_pp. `c` is kT in diffusion form and 0 in log form.
struct PhaseSpaceFlux {
  Grid2D grid;
  std::span<const double> rho;
  std::span<const double> drive_q;
  std::span<const double> drive_p;
  double mobility_q = 1.0;   ///< L_qq
  double mobility_p = 1.0;   ///< L_pp
  double diffusion_coefficient = 0.0;  ///< c above
  bool antisymmetric = true;
  bool dissipative = true;
};

struct PhaseSpaceWorkspace {
  std::vector<double> x, y, face_q, face_p;
};

void phase_space_rate_serial(const PhaseSpaceFlux& in, std::span<double> rate);
void phase_space_rate_parallel(const PhaseSpaceFlux& in, std::span<double> rate, PhaseSpaceWorkspace& ws);
void phase_space_rate(const PhaseSpaceFlux& in, std::span<double> rate, PhaseSpaceWorkspace& ws,
                      Execution exec);

/// rho + dt * rate, element-wise.
void axpy_update(std::span<const double> rho, std::span<const double> rate, double dt,
                 std::span<double> out, Execution exec);

}  // namespace thermorelax::kernels
