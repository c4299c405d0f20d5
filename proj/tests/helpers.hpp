#pragma once

#include <complex>
#include <random>

#include "sgf/field.hpp"
#include "sgf/operators.hpp"

// Shared helpers for the unit tests.
namespace sgt {

using sgf::Complex;
using sgf::SpectralVectorField;
using sgf::TorusGrid;

// Writes the coefficient at integer frequency (j1, j2) together with its
// conjugate partner so the field stays real-valued.
inline void add_mode_pair(SpectralVectorField& u, int j1, int j2, Complex a0, Complex a1) {
  const TorusGrid& g = u.grid();
  const int r1 = g.row_of(j1);
  const int r2 = g.row_of(j2);
  u.at(0, r1, r2) += a0;
  u.at(1, r1, r2) += a1;
  const int q1 = g.row_of(-j1);
  const int q2 = g.row_of(-j2);
  if (q1 != r1 || q2 != r2) {
    u.at(0, q1, q2) += std::conj(a0);
    u.at(1, q1, q2) += std::conj(a1);
  }
}

// Smooth random field: complex gaussian coefficients damped like
// (1 + |k|^2)^{-decay/2}, symmetrized, mean removed.
inline SpectralVectorField random_field(const TorusGrid& g, std::mt19937_64& rng,
                                        double decay = 2.0) {
  SpectralVectorField u(g);
  std::normal_distribution<double> gauss;
  for (int c = 0; c < 2; ++c) {
    for (int i1 = 0; i1 < g.n; ++i1) {
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double w = std::pow(1.0 + g.lambda(i1, i2), -0.5 * decay);
        u.at(c, i1, i2) = w * Complex{gauss(rng), gauss(rng)};
      }
    }
  }
  u.symmetrize();
  u.zero_mean_mode();
  return u;
}

inline SpectralVectorField random_divfree(const TorusGrid& g, std::mt19937_64& rng,
                                          double decay = 2.0) {
  return sgf::leray_project(random_field(g, rng, decay));
}

}  // namespace sgt
