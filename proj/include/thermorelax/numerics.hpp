// Uniform grids, sampled fields, finite differences and trapezoidal quadrature.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermorelax {

/// Raised when an iterative or time-stepping procedure cannot produce a
/// trustworthy result (iteration cap, rejected step, non-finite values).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform lattice lo = x_0 < x_1 < ... < x_{n-1} = hi.
struct Grid1D {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 3;
  double h = 0.5;

  double node(std::size_t i) const {
    // Last node pinned to hi so the interval is reproduced exactly.
    return i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  std::vector<double> nodes() const;

  /// Trapezoid weight of node i; also the width of its dual cell.
  double weight(std::size_t i) const { return (i == 0 || i + 1 == n) ? 0.5 * h : h; }

  bool operator==(const Grid1D&) const = default;
};

/// Rejects n < 3 and hi <= lo with std::invalid_argument.
Grid1D build_grid(double lo, double hi, std::size_t n);

/// Sampled real function on a Grid1D.
class Field {
 public:
  Field() = default;
  /// Zero field.
  explicit Field(const Grid1D& grid);
  /// Throws std::invalid_argument on a length mismatch or non-finite entries.
  Field(const Grid1D& grid, std::vector<double> values);

  static Field sample(const Grid1D& grid, const std::function<double(double)>& fn);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

 private:
  Grid1D grid_{};
  std::vector<double> values_;
};

/// Phase-space lattice; fields are stored row-major with q outer, p inner.
struct Grid2D {
  Grid1D q;
  Grid1D p;

  std::size_t size() const { return q.n * p.n; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * p.n + j; }
  bool operator==(const Grid2D&) const = default;
};

class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(const Grid2D& grid);
  Field2D(const Grid2D& grid, std::vector<double> values);

  static Field2D sample(const Grid2D& grid, const std::function<double(double, double)>& fn);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }

 private:
  Grid2D grid_{};
  std::vector<double> values_;
};

/// Second-order central differences inside, second-order one-sided at the ends.
Field gradient(const Field& f);

/// Three-point stencil with f = 0 beyond both ends (homogeneous Dirichlet).
Field second_derivative(const Field& f);

/// Trapezoidal rule.
double integrate(const Field& f);
double integrate(std::span<const double> values, const Grid1D& grid);
double integrate(const Field2D& f);

/// Span-level derivative used by kernels that work on strided slices.
void gradient(std::span<const double> f, double h, std::span<double> out);

}  // namespace thermorelax
