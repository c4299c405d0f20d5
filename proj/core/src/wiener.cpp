#include "sgf/wiener.hpp"

#include <cmath>
#include <cstring>

namespace sgf {

int step_count(double T, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  if (T < 0.0) throw InvalidArgument("horizon must be >= 0");
  const long long n = std::llround(T / dt);
  if (std::abs(static_cast<double>(n) * dt - T) > 1e-12 * std::max(1.0, std::abs(T))) {
    throw InvalidArgument("dt must divide the horizon T");
  }
  return static_cast<int>(n);
}

WienerPath sample_wiener(double T, double dt, int dimension, uint64_t seed) {
  if (dimension < 0) throw InvalidArgument("noise dimension must be >= 0");
  const int n = step_count(T, dt);
  WienerPath path;
  path.dt = dt;
  path.dimension = dimension;
  path.increments.resize(static_cast<size_t>(n) * dimension);
  const double root_dt = std::sqrt(dt);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dimension; ++c) {
      path.increments[static_cast<size_t>(i) * dimension + c] =
          root_dt * counter_normal(seed, static_cast<uint64_t>(i), static_cast<uint32_t>(c));
    }
  }
  return path;
}

WienerPath coarsen(const WienerPath& fine, int factor) {
  if (factor < 1) throw InvalidArgument("coarsening factor must be >= 1");
  const int n = fine.steps();
  if (n % factor != 0) {
    throw InvalidArgument("coarsening factor must divide the number of steps");
  }
  WienerPath out;
  out.dt = fine.dt * factor;
  out.dimension = fine.dimension;
  out.increments.assign(static_cast<size_t>(n / factor) * fine.dimension, 0.0);
  for (int i = 0; i < n; ++i) {
    const int block = i / factor;
    for (int c = 0; c < fine.dimension; ++c) {
      out.increments[static_cast<size_t>(block) * fine.dimension + c] +=
          fine.increments[static_cast<size_t>(i) * fine.dimension + c];
    }
  }
  return out;
}

namespace {

void fnv_bytes(uint64_t& h, const void* data, size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
}

}  // namespace

uint64_t path_checksum(const WienerPath& path) {
  uint64_t h = 14695981039346656037ull;
  const int64_t dim = path.dimension;
  fnv_bytes(h, &dim, sizeof(dim));
  fnv_bytes(h, &path.dt, sizeof(path.dt));
  if (!path.increments.empty()) {
    fnv_bytes(h, path.increments.data(), path.increments.size() * sizeof(double));
  }
  return h;
}

}  // namespace sgf
