#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sgf/model.hpp"

namespace sgf {

// One Monte Carlo study: the same stochastic system integrated at every
// filter scale in `alphas` (0 is the unfiltered reference) over `paths`
// independent Wiener paths. All runs at one path index share the exact
// same increments, so per-path differences measure the filter alone.
struct SweepConfig {
  ModelParams base;             // base.alpha is ignored; alphas rules
  std::vector<double> alphas;   // strictly descending, contains 0 exactly once
  int paths = 32;
  uint64_t seed = 2026;
  std::vector<double> epsilons = {0.05, 0.1, 0.2};  // relative thresholds
  std::vector<double> deltas;   // lags for the increment modulus, may be empty
};

// Rejects a malformed alpha list (not strictly descending, 0 missing or
// repeated, negatives), paths < 1, nonpositive thresholds, and lags that
// are not multiples of dt inside (0, T].
void validate_sweep(const SweepConfig& cfg);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int points = 0;  // 0 means not fittable (fewer than 3 usable points)
};

// Ordinary least squares on (log x, log y). Requires matching lengths,
// at least 3 points, all entries positive.
RateFit fit_rate(std::span<const double> xs, std::span<const double> ys);

struct ProbEstimate {
  double fraction = 0.0;
  double stderr_fraction = 0.0;
};

// Empirical tail fraction #{d_i > epsilon}/M with its binomial standard
// error. Rejects an empty sample or epsilon <= 0.
ProbEstimate estimate_probability(std::span<const double> distances, double epsilon);

// One (alpha, path) cell of the sweep.
struct CellOutcome {
  double distance = 0.0;       // L^2-in-time L^2-in-space distance to the reference
  double sup_v_sq = 0.0;       // sup over times of |u|^2 + alpha ||u||^2
  double int_grad_sq = 0.0;    // left-endpoint integral of ||u||^2
  double remainder_l2t = 0.0;  // L^2-in-time norm of the correction-term H^-4 norm
  std::vector<double> modulus; // one entry per configured lag
  bool excluded = false;       // blow-up on this cell (or on its reference)
};

struct SweepReport {
  std::vector<double> alphas;
  int paths = 0;
  uint64_t seed = 0;
  std::vector<double> epsilons;
  std::vector<double> deltas;

  std::vector<std::vector<CellOutcome>> cells;  // [alpha][path]
  std::vector<uint64_t> path_checksums;         // per path, shared by all alphas
  std::vector<double> ref_l2t_norm;             // per path, reference trajectory size

  // Ensemble aggregates over included paths, one entry per alpha.
  std::vector<double> mean_distance;
  std::vector<double> sup_v_moment;
  std::vector<double> int_grad_moment;
  std::vector<double> remainder_moment;
  std::vector<std::vector<double>> mean_modulus;        // [alpha][delta]
  std::vector<std::vector<ProbEstimate>> exceedance;    // [alpha][epsilon], relative

  RateFit distance_fit;    // mean distance vs alpha over the positive alphas
  RateFit remainder_fit;   // remainder moment vs alpha
  std::vector<RateFit> modulus_fit;  // per alpha: mean modulus vs lag

  int excluded_cells = 0;
  bool ok = true;
  std::string failure;
};

// Runs the whole study. Deterministic for a fixed config: the report is
// identical byte for byte regardless of `workers` (results are stored per
// path index and reduced in a fixed order). Blow-ups mark the affected
// cells excluded; losing a reference trajectory excludes its whole path;
// the report fails (ok = false) when more than 5% of cells are excluded
// or an alpha has no surviving paths.
SweepReport run_sweep(const SweepConfig& cfg, int workers = 1);

}  // namespace sgf
