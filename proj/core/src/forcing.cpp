#include "sgf/forcing.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sgf {

double Modulation::value(double t) const {
  switch (kind) {
    case Kind::kConstant:
      return 1.0;
    case Kind::kCosine:
      return std::cos(2.0 * std::numbers::pi * t / period);
  }
  throw Error("unreachable modulation kind");
}

void validate_mode(const ForcingMode& m, const TorusGrid& g) {
  if (m.j1 == 0 && m.j2 == 0) {
    throw InvalidArgument("forcing mode (0,0) is not allowed; fields are mean-free");
  }
  if (!g.dealias_keep(g.row_of_checked(m.j1), g.row_of_checked(m.j2))) {
    throw InvalidArgument("forcing mode (" + std::to_string(m.j1) + "," +
                          std::to_string(m.j2) + ") lies outside the two-thirds band");
  }
  const Complex div = static_cast<double>(m.j1) * m.amp0 + static_cast<double>(m.j2) * m.amp1;
  const double amp = std::sqrt(std::norm(m.amp0) + std::norm(m.amp1));
  const double jmag = std::hypot(static_cast<double>(m.j1), static_cast<double>(m.j2));
  if (std::abs(div) > 1e-12 * amp * jmag) {
    throw InvalidArgument("forcing mode (" + std::to_string(m.j1) + "," +
                          std::to_string(m.j2) +
                          ") is not divergence-free: amplitude must be orthogonal to the mode");
  }
}

void validate_forcing(const ForcingSpec& f, const TorusGrid& g) {
  for (const ForcingEntry& e : f.entries) validate_mode(e.mode, g);
}

SpectralVectorField eval_forcing(const ForcingSpec& f, const TorusGrid& g, double t,
                                 double horizon) {
  if (!(t >= 0.0) || t > horizon) {
    throw InvalidArgument("forcing evaluated outside [0, horizon]");
  }
  SpectralVectorField out(g);
  for (const ForcingEntry& e : f.entries) {
    const double w = e.mod.value(t);
    const int a1 = g.row_of_checked(e.mode.j1);
    const int a2 = g.row_of_checked(e.mode.j2);
    out.at(0, a1, a2) += w * e.mode.amp0;
    out.at(1, a1, a2) += w * e.mode.amp1;
    const int b1 = g.row_of_checked(-e.mode.j1);
    const int b2 = g.row_of_checked(-e.mode.j2);
    out.at(0, b1, b2) += w * std::conj(e.mode.amp0);
    out.at(1, b1, b2) += w * std::conj(e.mode.amp1);
  }
  out.set_divergence_free(true);
  return out;
}

}  // namespace sgf
