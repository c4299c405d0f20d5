#pragma once

#include "sgf/field.hpp"
#include "sgf/forcing.hpp"
#include "sgf/noise.hpp"

namespace sgf {

// Everything that defines one stochastic simulation: the filtered fluid
// for alpha > 0, Navier-Stokes at alpha = 0.
struct ModelParams {
  TorusGrid grid;
  double alpha = 0.0;
  double nu = 0.1;
  double T = 1.0;
  double dt = 1e-3;
  ForcingSpec forcing;
  NoiseCoefficients noise;
  SpectralVectorField u0;
};

// Rejects non-positive viscosity, negative alpha, a step that does not
// divide the horizon, malformed forcing or noise modes, and an initial
// state that is not a mean-free divergence-free field on the same grid.
void validate_params(const ModelParams& p);

}  // namespace sgf
