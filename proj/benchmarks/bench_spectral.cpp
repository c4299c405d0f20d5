#include <benchmark/benchmark.h>

#include <random>

#include "sgf/operators.hpp"
#include "sgf/transform.hpp"

namespace {

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

void BM_transform_roundtrip(benchmark::State& state) {
  sgf::TorusGrid g(2.0 * 3.14159265358979323846, static_cast<int>(state.range(0)));
  sgf::Workspace ws(g);
  sgf::SpectralVectorField u = smooth_field(g, 42);
  for (auto _ : state) {
    sgf::PhysicalVectorField p = ws.to_physical(u);
    sgf::SpectralVectorField back = ws.to_spectral(p);
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_transform_roundtrip)->Arg(32)->Arg(64)->Arg(128);

void BM_leray_project(benchmark::State& state) {
  sgf::TorusGrid g(2.0 * 3.14159265358979323846, static_cast<int>(state.range(0)));
  sgf::SpectralVectorField u = smooth_field(g, 7);
  for (auto _ : state) {
    sgf::SpectralVectorField v = sgf::leray_project(u);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_leray_project)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
