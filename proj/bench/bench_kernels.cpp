// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "thermorelax/kernels.hpp"

using namespace thermorelax;
namespace k = thermorelax::kernels;

namespace {

struct Line {
  std::vector<double> rho, drive, rate, faces;
  k::DriftDiffusion1D in;

  explicit Line(std::size_t n) : rho(n), drive(n), rate(n) {
    const Grid1D g = build_grid(-10.0, 10.0, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.node(i);
      rho[i] = std::exp(-0.5 * (x - 1.0) * (x - 1.0));
      drive[i] = 0.5 * x * x + std::log(rho[i]);
    }
    in = k::DriftDiffusion1D{rho, drive, 1.0, 0.0, g.h};
  }
};

struct Plane {
  std::vector<double> rho, dq, dp, rate;
  k::PhaseSpaceWorkspace ws;
  k::PhaseSpaceFlux in;

  explicit Plane(std::size_t n) {
    const Grid2D g{build_grid(-8.0, 8.0, n), build_grid(-8.0, 8.0, n)};
    rho.resize(g.size());
    dq.resize(g.size());
    dp.resize(g.size());
    rate.resize(g.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double q = g.q.node(i);
        const double p = g.p.node(j);
        rho[g.index(i, j)] = std::exp(-0.5 * ((q - 1.0) * (q - 1.0) + p * p));
        dq[g.index(i, j)] = 0.5 * q * q;
        dp[g.index(i, j)] = 0.5 * p * p;
      }
    }
    in = k::PhaseSpaceFlux{g, rho, dq, dp, 1.0, 1.0, 1.0, true, true};
  }
};

void BM_DriftDiffusionSerial(benchmark::State& state) {
  Line line(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    k::drift_diffusion_rate_serial(line.in, line.rate);
    benchmark::DoNotOptimize(line.rate.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DriftDiffusionParallel(benchmark::State& state) {
  Line line(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    k::drift_diffusion_rate_parallel(line.in, line.rate, line.faces);
    benchmark::DoNotOptimize(line.rate.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PhaseSpaceSerial(benchmark::State& state) {
  Plane plane(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    k::phase_space_rate_serial(plane.in, plane.rate);
    benchmark::DoNotOptimize(plane.rate.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_PhaseSpaceParallel(benchmark::State& state) {
  Plane plane(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    k::phase_space_rate_parallel(plane.in, plane.rate, plane.ws);
    benchmark::DoNotOptimize(plane.rate.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_DriftDiffusionSerial)->Arg(401)->Arg(2001)->Arg(20001);
BENCHMARK(BM_DriftDiffusionParallel)->Arg(401)->Arg(2001)->Arg(20001);
BENCHMARK(BM_PhaseSpaceSerial)->Arg(61)->Arg(121)->Arg(201);
BENCHMARK(BM_PhaseSpaceParallel)->Arg(61)->Arg(121)->Arg(201);

BENCHMARK_MAIN();
