#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sgf/grid.hpp"

namespace sgf {

// One named runtime check.  detail carries the measured deviation (or the
// failure reason), so a printed report is useful even when all is well.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Operator identity battery on random fields of the given grid: transform
// round trip, Parseval, projection idempotence and exactness, filter
// inverse, norm equivalence window, filter monotonicity, dealias
// idempotence, nonlinearity orthogonality, remainder linearity.
std::vector<CheckResult> run_diagnose(const TorusGrid& grid,
                                      std::span<const double> alphas, int fields,
                                      uint64_t seed);

// Full behavioral battery: the diagnose identities plus decay, temporal
// order, noise statistics, sweep coupling, config round trip, and
// snapshot round trip.  File-based checks write only inside scratch_dir
// (created if missing).
std::vector<CheckResult> run_selftest(const std::string& scratch_dir);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sgf
