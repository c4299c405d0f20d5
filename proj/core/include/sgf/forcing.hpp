#pragma once

#include <vector>

#include "sgf/field.hpp"

namespace sgf {

// Deterministic time modulation attached to a forcing entry or a noise
// component.
struct Modulation {
  enum class Kind { kConstant, kCosine };

  Kind kind = Kind::kConstant;
  double period = 0.0;

  static Modulation constant() { return {}; }

  static Modulation cosine(double period) {
    if (!(period > 0.0)) throw InvalidArgument("modulation period must be > 0");
    return {Kind::kCosine, period};
  }

  double value(double t) const;
};

// One Fourier mode of a vector field: the coefficient of e^{i k.x} at
// integer frequency (j1, j2).  The conjugate partner at -(j1, j2) is
// implied, so realized fields are real.
struct ForcingMode {
  int j1 = 0;
  int j2 = 0;
  Complex amp0;
  Complex amp1;
};

struct ForcingEntry {
  ForcingMode mode;
  Modulation mod;
};

// Smooth divergence-free deterministic forcing, F(t) = sum of modulated
// fixed modes.
struct ForcingSpec {
  std::vector<ForcingEntry> entries;
};

// Rejects modes that are zero-frequency, outside the two-thirds band of
// the grid, or not orthogonal to their wavevector.
void validate_mode(const ForcingMode& m, const TorusGrid& g);
void validate_forcing(const ForcingSpec& f, const TorusGrid& g);

// Realizes F(t) as a spectral field.  t must lie in [0, horizon].
SpectralVectorField eval_forcing(const ForcingSpec& f, const TorusGrid& g, double t,
                                 double horizon);

}  // namespace sgf
