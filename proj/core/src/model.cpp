#include "sgf/model.hpp"

#include <cmath>

#include "sgf/wiener.hpp"

namespace sgf {

void validate_params(const ModelParams& p) {
  if (!(p.grid.length > 0.0) || p.grid.n < 8 || p.grid.n % 2 != 0) {
    throw InvalidArgument("grid must be even, at least 8, with positive length");
  }
  if (!(p.nu > 0.0)) throw InvalidArgument("viscosity must be > 0");
  if (!(p.alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  if (!(p.T >= 0.0)) throw InvalidArgument("horizon must be >= 0");
  if (!(p.dt > 0.0)) throw InvalidArgument("time step must be > 0");
  step_count(p.T, p.dt);
  validate_forcing(p.forcing, p.grid);
  validate_noise(p.noise, p.grid);

  if (!(p.u0.grid() == p.grid)) {
    throw InvalidArgument("initial state lives on a different grid");
  }
  if (!p.u0.divergence_free()) {
    throw InvalidArgument("initial state must be divergence-free");
  }
  double scale = 0.0;
  for (const Complex& z : p.u0.raw()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("initial state has non-finite coefficients");
    }
    scale = std::max(scale, std::abs(z));
  }
  const double mean = std::abs(p.u0.at(0, 0, 0)) + std::abs(p.u0.at(1, 0, 0));
  if (mean > 1e-12 * scale) {
    throw InvalidArgument("initial state must have zero mean");
  }
}

}  // namespace sgf
