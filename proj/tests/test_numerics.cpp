#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"

using namespace trtest;

namespace {

double grad_error(std::size_t n) {
  const Grid1D g = build_grid(-std::numbers::pi, std::numbers::pi, n);
  const Field d = gradient(Field::sample(g, [](double x) { return std::sin(x); }));
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::fabs(d[i] - std::cos(g.node(i))));
  return err;
}

// Interior nodes only: the boundary rows follow the zero-outside convention.
double second_error(std::size_t n) {
  const Grid1D g = build_grid(0.0, 1.0, n);
  const Field d = second_derivative(Field::sample(g, [](double x) { return std::exp(x); }));
  double err = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) err = std::max(err, std::fabs(d[i] - std::exp(g.node(i))));
  return err;
}

}  // namespace

TEST_CASE("build_grid") {
  const Grid1D g = build_grid(-1.0, 1.0, 5);
  CHECK(g.h == 0.5);
  const double expected[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(g.node(i) == expected[i]);

  CHECK_THROWS_AS(build_grid(0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 0.0, 10), std::invalid_argument);

  const Grid1D big = build_grid(-12.0, 12.0, 2001);
  CHECK(big.h == doctest::Approx(0.012).epsilon(1e-14));
  CHECK(big.node(1000) == 0.0);
  CHECK(big.node(2000) == 12.0);
}

TEST_CASE("Field rejects bad input") {
  const Grid1D g = build_grid(0.0, 1.0, 4);
  CHECK_THROWS_AS(Field(g, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Field(g, {1.0, 2.0, NAN, 0.0}), std::invalid_argument);
}

TEST_CASE("gradient") {
  const Grid1D g = build_grid(-2.0, 3.0, 41);
  CHECK(max_abs(gradient(Field::sample(g, [](double) { return 7.0; })).values()) == 0.0);

  const Field d = gradient(Field::sample(g, [](double x) { return 3.0 * x; }));
  for (double v : d.values()) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));

  const double coarse = grad_error(201);
  const double fine = grad_error(401);
  CHECK(std::log2(coarse / fine) >= 1.9);
  const double h = 2.0 * std::numbers::pi / 200.0;
  MESSAGE("gradient error constant C = " << coarse / (h * h));
}

TEST_CASE("second_derivative") {
  const Grid1D g = build_grid(-1.0, 2.0, 31);
  const Field d = second_derivative(Field::sample(g, [](double x) { return x * x; }));
  for (std::size_t i = 1; i + 1 < g.n; ++i) CHECK(d[i] == doctest::Approx(2.0).epsilon(1e-10));

  const Field c = second_derivative(Field::sample(g, [](double) { return 4.0; }));
  for (std::size_t i = 1; i + 1 < g.n; ++i) CHECK(std::fabs(c[i]) < 1e-12);
  // Zero beyond the ends.
  CHECK(c[0] == doctest::Approx(-4.0 / (g.h * g.h)));

  CHECK(std::log2(second_error(101) / second_error(201)) >= 1.9);
}

TEST_CASE("integrate") {
  const Grid1D unit = build_grid(0.0, 1.0, 11);
  CHECK(integrate(Field::sample(unit, [](double) { return 1.0; })) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(integrate(Field::sample(unit, [](double x) { return x; })) == doctest::Approx(0.5).epsilon(1e-15));

  const Grid1D g = build_grid(-12.0, 12.0, 2001);
  const Field normal = Field::sample(g, [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); });
  CHECK(std::fabs(integrate(normal) - 1.0) < 1e-9);

  const Grid2D g2{build_grid(0.0, 1.0, 5), build_grid(0.0, 2.0, 9)};
  CHECK(integrate(Field2D::sample(g2, [](double q, double p) { return q + p; })) == doctest::Approx(3.0));
}

TEST_CASE("derivative operators are linear") {
  const Grid1D g = build_grid(-3.0, 3.0, 61);
  const Field f = Field::sample(g, [](double x) { return std::sin(2.0 * x) + x * x * x; });
  const Field h = Field::sample(g, [](double x) { return std::exp(-x * x); });
  const double a = 1.7;
  const double b = -0.4;
  Field mix(g);
  for (std::size_t i = 0; i < g.n; ++i) mix[i] = a * f[i] + b * h[i];

  for (auto op : {+[](const Field& x) { return gradient(x); }, +[](const Field& x) { return second_derivative(x); }}) {
    const Field lhs = op(mix);
    const Field of = op(f);
    const Field oh = op(h);
    const double scale = std::max(max_abs(of.values()), max_abs(oh.values()));
    for (std::size_t i = 0; i < g.n; ++i) CHECK(std::fabs(lhs[i] - (a * of[i] + b * oh[i])) <= 1e-13 * scale);
  }
}

TEST_CASE("integral of a gradient telescopes for periodic fields") {
  for (int k : {1, 2, 5}) {
    const Grid1D g = build_grid(-std::numbers::pi, std::numbers::pi, 201);
    const Field f = Field::sample(g, [k](double x) { return std::cos(k * x) + 0.3 * std::cos(3.0 * k * x); });
    CHECK(std::fabs(integrate(gradient(f))) < 1e-10);
  }
}
