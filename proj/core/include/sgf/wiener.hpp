#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sgf/errors.hpp"
#include "sgf/rng.hpp"

namespace sgf {

// Increments of an m-dimensional Brownian motion on a uniform time grid,
// step-major: increments[i*dimension + c] is component c of W(t_{i+1}) - W(t_i).
struct WienerPath {
  double dt = 0.0;
  int dimension = 0;
  std::vector<double> increments;

  int steps() const {
    return dimension == 0 ? 0 : static_cast<int>(increments.size()) / dimension;
  }

  double horizon() const { return dt * steps(); }

  std::span<const double> increment(int i) const {
    return {increments.data() + static_cast<size_t>(i) * dimension,
            static_cast<size_t>(dimension)};
  }
};

// Derives the key for one path of an ensemble.  Injective per master seed.
constexpr uint64_t substream_seed(uint64_t master, uint64_t index) {
  return mix64(master + 0x9E3779B97F4A7C15ull * (index + 1));
}

// Exact Brownian increments, N(0, dt) per component, addressed by
// (seed, step, component) so regenerating any path needs no state.
// dt must divide T to within 1e-12 (relative).
WienerPath sample_wiener(double T, double dt, int dimension, uint64_t seed);

// Block-sums consecutive increments: the result is the same Brownian path
// observed on a grid coarser by `factor`, which must divide the step count.
WienerPath coarsen(const WienerPath& fine, int factor);

// FNV-1a over (dimension, dt, increments); used to assert that coupled
// runs consumed bit-identical noise.
uint64_t path_checksum(const WienerPath& path);

// Number of steps on [0, T] with spacing dt; throws unless dt divides T
// to within 1e-12 relative.
int step_count(double T, double dt);

}  // namespace sgf
