#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sgf/diagnostics.hpp"
#include "sgf/integrator.hpp"
#include "sgf/nonlinear.hpp"
#include "sgf/operators.hpp"
#include "sgf/transform.hpp"

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

sgf::SpectralVectorField smooth_field(const sgf::TorusGrid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  sgf::SpectralVectorField u(g);
  for (int c = 0; c < 2; ++c) {
    for (int i1 = 0; i1 < g.n; ++i1) {
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double w = 1.0 / (1.0 + g.lambda(i1, i2));
        u.at(c, i1, i2) = w * sgf::Complex{gauss(rng), gauss(rng)};
      }
    }
  }
  u.symmetrize();
  u.zero_mean_mode();
  return sgf::leray_project(u);
}

sgf::ModelParams bench_params(const sgf::TorusGrid& g) {
  sgf::ModelParams p;
  p.grid = g;
  p.alpha = 0.25;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.u0 = sgf::taylor_green(g, 1.0);
  sgf::NoiseComponent c0, c1;
  c0.modes.push_back({0, 1, sgf::Complex{0.25, 0.0}, sgf::Complex{}});
  c1.modes.push_back({1, 1, sgf::Complex{0.15, -0.15}, sgf::Complex{-0.15, 0.15}});
  p.noise.components = {c0, c1};
  return p;
}

void BM_nonlinear_term(benchmark::State& state) {
  const sgf::TorusGrid g(kTwoPi, static_cast<int>(state.range(0)));
  sgf::Workspace ws(g);
  const sgf::SpectralVectorField u = sgf::dealias(smooth_field(g, 7));
  const double alpha = state.range(1) == 0 ? 0.0 : 0.25;
  for (auto _ : state) {
    sgf::SpectralVectorField b = sgf::nonlinear_term(u, alpha, ws);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_nonlinear_term)->Args({64, 0})->Args({64, 1})->Args({128, 1});

void BM_integrator_step(benchmark::State& state) {
  const sgf::TorusGrid g(kTwoPi, static_cast<int>(state.range(0)));
  sgf::Workspace ws(g);
  const sgf::ModelParams p = bench_params(g);
  const std::vector<double> dw = {0.01, -0.02};
  for (auto _ : state) {
    sgf::SpectralVectorField u = sgf::step(p.u0, p, 0.0, dw, ws);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_integrator_step)->Arg(32)->Arg(64)->Arg(128);

void BM_record_norms(benchmark::State& state) {
  const sgf::TorusGrid g(kTwoPi, static_cast<int>(state.range(0)));
  sgf::Workspace ws(g);
  const sgf::SpectralVectorField u = smooth_field(g, 11);
  for (auto _ : state) {
    sgf::NormRecord r = sgf::record_norms(u, 0.25, ws);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_record_norms)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
