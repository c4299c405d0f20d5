#pragma once

#include <span>
#include <vector>

#include "sgf/forcing.hpp"
#include "sgf/wiener.hpp"

namespace sgf {

// One column G_k of the diffusion coefficient: a fixed divergence-free
// mode bundle with a shared deterministic modulation.
struct NoiseComponent {
  std::vector<ForcingMode> modes;
  Modulation mod;
};

// The full diffusion operator G = (G_1, ..., G_m) acting on an
// m-dimensional Wiener process.
struct NoiseCoefficients {
  std::vector<NoiseComponent> components;

  int dimension() const { return static_cast<int>(components.size()); }
};

void validate_noise(const NoiseCoefficients& g, const TorusGrid& grid);

// G_k(t) as a spectral field.
SpectralVectorField noise_component_field(const NoiseComponent& c, const TorusGrid& grid,
                                          double t);

// sum_k G_k(t) dW_k for one time step.  dW must have the same dimension
// as the coefficients; t must lie in [0, horizon].
SpectralVectorField noise_increment(const NoiseCoefficients& g, const TorusGrid& grid,
                                    double t, double horizon, std::span<const double> dw);

}  // namespace sgf
