#include "thermorelax/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

namespace thermorelax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be positive and finite, got " << value;
    throw std::invalid_argument(msg.str());
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be finite";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void validate(const PotentialSpec& potential) {
  std::visit(overloaded{
                 [](const FreePotential&) {},
                 [](const HarmonicPotential& p) {
                   require_positive(p.mass, "harmonic mass");
                   require_positive(p.omega, "harmonic omega");
                   require_finite(p.force, "harmonic force");
                 },
                 [](const QuarticDoubleWell& p) {
                   require_finite(p.a2, "quartic a2");
                   require_positive(p.a4, "quartic a4");
                 },
                 [](const TabulatedPotential&) {},
             },
             potential);
}

Field sample_potential(const PotentialSpec& potential, const Grid1D& grid) {
  validate(potential);
  return std::visit(
      overloaded{
          [&](const FreePotential&) { return Field(grid); },
          [&](const HarmonicPotential& p) {
            return Field::sample(grid, [&](double q) { return 0.5 * p.mass * p.omega * p.omega * q * q - p.force * q; });
          },
          [&](const QuarticDoubleWell& p) {
            return Field::sample(grid, [&](double q) { return p.a4 * q * q * q * q - p.a2 * q * q; });
          },
          [&](const TabulatedPotential& p) {
            if (!(p.values.grid() == grid)) {
              throw std::invalid_argument("tabulated potential lives on a different grid");
            }
            return p.values;
          },
      },
      potential);
}

void HamiltonianMatrix::apply(std::span<const double> v, std::span<double> out) const {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag[i] * v[i];
    if (i > 0) acc += offdiag[i - 1] * v[i - 1];
    if (i + 1 < n) acc += offdiag[i] * v[i + 1];
    out[i] = acc;
  }
}

Field HamiltonianMatrix::apply(const Field& v) const {
  Field out(v.grid());
  apply(v.values(), out.values());
  return out;
}

double HamiltonianMatrix::kinetic_prefactor() const {
  return offdiag.empty() ? 0.0 : -offdiag.front() * grid.h * grid.h;
}

HamiltonianMatrix discretize_position_hamiltonian(const Grid1D& grid, double mass, double hbar,
                                                  const PotentialSpec& potential) {
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
  const Field u = sample_potential(potential, grid);
  const double kinetic = hbar * hbar / (mass * grid.h * grid.h);

  HamiltonianMatrix h{grid, Representation::position, std::vector<double>(grid.n),
                      std::vector<double>(grid.n - 1, -0.5 * kinetic), mass, hbar};
  for (std::size_t i = 0; i < grid.n; ++i) h.diag[i] = kinetic + u[i];
  return h;
}

HamiltonianMatrix discretize_momentum_hamiltonian(const Grid1D& grid, double mass, double hbar,
                                                  double omega) {
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega must be non-negative and finite");
  }
  // The harmonic potential becomes a second derivative in p.
  const double coupling = mass * omega * omega * hbar * hbar / (grid.h * grid.h);
  HamiltonianMatrix h{grid, Representation::momentum, std::vector<double>(grid.n),
                      std::vector<double>(grid.n - 1, -0.5 * coupling), mass, hbar};
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double p = grid.node(i);
    h.diag[i] = p * p / (2.0 * mass) + coupling;
  }
  return h;
}

HamiltonianMatrix discretize_momentum_hamiltonian(const Grid1D& grid, double mass, double hbar,
                                                  const PotentialSpec& potential) {
  validate(potential);
  if (std::holds_alternative<FreePotential>(potential)) {
    return discretize_momentum_hamiltonian(grid, mass, hbar, 0.0);
  }
  if (const auto* harmonic = std::get_if<HarmonicPotential>(&potential)) {
    if (harmonic->force != 0.0) {
      throw std::invalid_argument("a linear force has no real momentum-space form");
    }
    if (harmonic->mass != mass) {
      throw std::invalid_argument("harmonic potential mass must equal the particle mass");
    }
    return discretize_momentum_hamiltonian(grid, mass, hbar, harmonic->omega);
  }
  throw std::invalid_argument("momentum representation supports only free and harmonic potentials");
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> offdiag,
                                            int max_iterations) {
  const auto n = static_cast<std::ptrdiff_t>(d.size());
  std::vector<double> e(d.size(), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  const double eps = std::numeric_limits<double>::epsilon();

  // Implicit-shift QL sweep (tql1 ordering), eigenvalues only.
  for (std::ptrdiff_t l = 0; l < n; ++l) {
    int iter = 0;
    std::ptrdiff_t m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iterations) {
          std::ostringstream msg;
          msg << "QL iteration did not converge for eigenvalue " << l << " after " << max_iterations
              << " sweeps";
          throw NumericalError(msg.str());
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::ptrdiff_t i = m - 1;
        bool deflated = false;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

/// LU factorization with partial pivoting of a shifted tridiagonal matrix.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const HamiltonianMatrix& h, double shift, double tiny) {
    const std::size_t n = h.diag.size();
    d_.resize(n);
    dl_ = h.offdiag;
    du_ = h.offdiag;
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    pivot_.assign(n > 0 ? n - 1 : 0, false);
    for (std::size_t i = 0; i < n; ++i) d_[i] = h.diag[i] - shift;

    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        pivot_[i] = true;
      }
    }
    for (double& v : d_) {
      if (std::fabs(v) < tiny) v = std::copysign(tiny, v == 0.0 ? 1.0 : v);
    }
  }

  void solve(std::span<double> b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!pivot_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) {
      b[k] = (b[k] - du_[k] * b[k + 1] - du2_[k] * b[k + 2]) / d_[k];
    }
  }

 private:
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<bool> pivot_;
};

double inf_norm(const HamiltonianMatrix& h) {
  double norm = 0.0;
  const std::size_t n = h.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(h.diag[i]);
    if (i > 0) row += std::fabs(h.offdiag[i - 1]);
    if (i + 1 < n) row += std::fabs(h.offdiag[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void scale(std::span<double> v, double factor) {
  for (double& x : v) x *= factor;
}

}  // namespace

Spectrum solve_spectrum(const HamiltonianMatrix& h, std::size_t k, const EigenOptions& options) {
  const std::size_t n = h.diag.size();
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "requested " << k << " eigenpairs from a matrix of order " << n;
    throw std::invalid_argument(msg.str());
  }

  std::vector<double> all = tridiagonal_eigenvalues(h.diag, h.offdiag, options.max_ql_iterations);
  std::vector<double> lambda(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));

  const double eps = std::numeric_limits<double>::epsilon();
  const double norm = std::max(inf_norm(h), std::numeric_limits<double>::min());
  const double tiny = eps * norm;
  const double cluster_gap = 1e-3 * norm;

  // Separate numerically coincident eigenvalues so each gets its own shift.
  for (std::size_t j = 1; j < k; ++j) {
    const double min_sep = 10.0 * eps * std::max(std::fabs(lambda[j]), norm * eps);
    if (lambda[j] - lambda[j - 1] < min_sep) lambda[j] = lambda[j - 1] + min_sep;
  }

  std::vector<std::vector<double>> vectors;
  vectors.reserve(k);
  std::vector<double> work(n);
  std::mt19937_64 rng(0x5eed1234abcdULL);
  std::size_t cluster_start = 0;

  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0 && lambda[j] - lambda[j - 1] > cluster_gap) cluster_start = j;

    const ShiftedTridiagonalLU lu(h, lambda[j], tiny);
    std::vector<double> x(n);
    for (double& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;

    // One more pass after the residual test passes brings the small tail
    // components to roundoff, which matters wherever H phi / phi is formed.
    bool converged = false;
    int passes_left = 2;
    for (int it = 0; it < options.max_inverse_iterations + 1 && passes_left > 0; ++it) {
      lu.solve(x);
      for (std::size_t c = cluster_start; c < j; ++c) {
        const double proj = dot(x, vectors[c]);
        for (std::size_t i = 0; i < n; ++i) x[i] -= proj * vectors[c][i];
      }
      const double len = std::sqrt(dot(x, x));
      if (!(len > 0.0) || !std::isfinite(len)) {
        throw NumericalError("inverse iteration produced a degenerate vector");
      }
      scale(x, 1.0 / len);

      h.apply(x, work);
      double residual = 0.0;
      for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::fabs(work[i] - lambda[j] * x[i]));
      const double target = std::max(options.residual_tolerance * std::max(1.0, std::fabs(lambda[j])) *
                                         std::sqrt(h.grid.h),
                                     100.0 * eps * norm);
      converged = converged || residual <= target;
      if (converged) --passes_left;
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "inverse iteration did not converge for eigenvalue " << j << " (E = " << lambda[j] << ")";
      throw NumericalError(msg.str());
    }
    vectors.push_back(std::move(x));
  }

  Spectrum out;
  out.complete = (k == n);
  out.energies.reserve(k);
  out.states.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double>& x = vectors[j];
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += h.grid.weight(i) * x[i] * x[i];
    scale(x, 1.0 / std::sqrt(norm2));

    const double vmax = std::fabs(*std::max_element(x.begin(), x.end(), [](double a, double b) {
      return std::fabs(a) < std::fabs(b);
    }));
    const double significant = std::sqrt(eps) * vmax;
    for (double v : x) {
      if (std::fabs(v) > significant) {
        if (v < 0.0) scale(x, -1.0);
        break;
      }
    }
    out.energies.push_back(all[j]);
    out.states.emplace_back(h.grid, std::move(x));
  }
  return out;
}

}  // namespace thermorelax
