#pragma once

#include <vector>

#include "sgf/field.hpp"

namespace sgf {

// Norms tracked along a trajectory. v and w are the alpha-weighted
// quantities that stay meaningful uniformly as alpha shrinks:
//   h    |u|            L^2 norm
//   grad ||u||          H^1 seminorm
//   v    |u|_V          sqrt(|u|^2 + alpha ||u||^2)
//   w    |u|_W          L^2 norm of (1 + alpha |k|^2) curl u
//   r_h4                H^-4 norm of the alpha correction term
struct NormRecord {
  double t = 0.0;
  double h = 0.0;
  double grad = 0.0;
  double v = 0.0;
  double w = 0.0;
  double r_h4 = 0.0;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<NormRecord> records;    // one per time if norms were requested
  std::vector<SpectralVectorField> snapshots;
  int snapshot_stride = 0;            // 0 means no snapshots were kept
  std::vector<double> residuals;      // per-step energy balance defects
  bool cfl_warning = false;

  int steps() const {
    return times.empty() ? 0 : static_cast<int>(times.size()) - 1;
  }
};

}  // namespace sgf
