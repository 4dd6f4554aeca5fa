#include "thermorelax/numerics.hpp"

#include <cmath>
#include <sstream>

namespace thermorelax {

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = node(i);
  return x;
}

Grid1D build_grid(double lo, double hi, std::size_t n) {
  if (n < 3) {
    std::ostringstream msg;
    msg << "grid needs at least 3 nodes, got " << n;
    throw std::invalid_argument(msg.str());
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    std::ostringstream msg;
    msg << "grid bounds must satisfy lo < hi, got [" << lo << ", " << hi << "]";
    throw std::invalid_argument(msg.str());
  }
  return Grid1D{lo, hi, n, (hi - lo) / static_cast<double>(n - 1)};
}

namespace {

void check_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "field value at node " << i << " is not finite";
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

Field::Field(const Grid1D& grid) : grid_(grid), values_(grid.n, 0.0) {}

Field::Field(const Grid1D& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n) {
    std::ostringstream msg;
    msg << "field has " << values_.size() << " values for a grid of " << grid_.n << " nodes";
    throw std::invalid_argument(msg.str());
  }
  check_finite(values_);
}

Field Field::sample(const Grid1D& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v[i] = fn(grid.node(i));
  return Field(grid, std::move(v));
}

Field2D::Field2D(const Grid2D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field2D::Field2D(const Grid2D& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("2D field size does not match its grid");
  }
  check_finite(values_);
}

Field2D Field2D::sample(const Grid2D& grid, const std::function<double(double, double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    const double q = grid.q.node(i);
    for (std::size_t j = 0; j < grid.p.n; ++j) v[grid.index(i, j)] = fn(q, grid.p.node(j));
  }
  return Field2D(grid, std::move(v));
}

void gradient(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size();
  const double inv2h = 0.5 / h;
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
}

Field gradient(const Field& f) {
  Field out(f.grid());
  gradient(f.values(), f.grid().h, out.values());
  return out;
}

Field second_derivative(const Field& f) {
  const std::size_t n = f.size();
  const double inv_h2 = 1.0 / (f.grid().h * f.grid().h);
  Field out(f.grid());
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? f[i - 1] : 0.0;
    const double right = i + 1 < n ? f[i + 1] : 0.0;
    out[i] = (left - 2.0 * f[i] + right) * inv_h2;
  }
  return out;
}

double integrate(std::span<const double> values, const Grid1D& grid) {
  const std::size_t n = values.size();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) interior += values[i];
  return grid.h * (interior + 0.5 * (values[0] + values[n - 1]));
}

double integrate(const Field& f) { return integrate(f.values(), f.grid()); }

double integrate(const Field2D& f) {
  const Grid2D& g = f.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < g.q.n; ++i) {
    total += g.q.weight(i) * integrate(f.values().subspan(i * g.p.n, g.p.n), g.p);
  }
  return total;
}

}  // namespace thermorelax
