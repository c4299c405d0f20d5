#include "sgf/noise.hpp"

namespace sgf {

void validate_noise(const NoiseCoefficients& g, const TorusGrid& grid) {
  for (const NoiseComponent& c : g.components) {
    for (const ForcingMode& m : c.modes) validate_mode(m, grid);
  }
}

namespace {

void add_component(SpectralVectorField& out, const NoiseComponent& c, double weight) {
  const TorusGrid& g = out.grid();
  for (const ForcingMode& m : c.modes) {
    const int a1 = g.row_of_checked(m.j1);
    const int a2 = g.row_of_checked(m.j2);
    out.at(0, a1, a2) += weight * m.amp0;
    out.at(1, a1, a2) += weight * m.amp1;
    const int b1 = g.row_of_checked(-m.j1);
    const int b2 = g.row_of_checked(-m.j2);
    out.at(0, b1, b2) += weight * std::conj(m.amp0);
    out.at(1, b1, b2) += weight * std::conj(m.amp1);
  }
}

}  // namespace

SpectralVectorField noise_component_field(const NoiseComponent& c, const TorusGrid& grid,
                                          double t) {
  SpectralVectorField out(grid);
  add_component(out, c, c.mod.value(t));
  out.set_divergence_free(true);
  return out;
}

SpectralVectorField noise_increment(const NoiseCoefficients& g, const TorusGrid& grid,
                                    double t, double horizon, std::span<const double> dw) {
  if (dw.size() != static_cast<size_t>(g.dimension())) {
    throw InvalidArgument("noise increment dimension does not match the coefficients");
  }
  if (!(t >= 0.0) || t > horizon) {
    throw InvalidArgument("noise evaluated outside [0, horizon]");
  }
  SpectralVectorField out(grid);
  for (size_t k = 0; k < dw.size(); ++k) {
    const NoiseComponent& c = g.components[k];
    add_component(out, c, c.mod.value(t) * dw[k]);
  }
  out.set_divergence_free(true);
  return out;
}

}  // namespace sgf
