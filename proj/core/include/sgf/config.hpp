#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgf/harness.hpp"

namespace sgf {

// How the initial velocity is specified in a run configuration.
struct InitialCondition {
  enum class Kind { kRest, kTaylorGreen, kModes };

  Kind kind = Kind::kRest;
  double amplitude = 1.0;          // taylor_green only
  std::vector<ForcingMode> modes;  // modes only
};

struct OutputConfig {
  std::string directory = "out";
  int snapshot_stride = 0;  // 0: no field dumps
};

// A full run description as read from a JSON config file.  parse_config
// fills documented defaults, rejects unknown keys, and validates every
// constraint that can be checked without running anything.
struct RunConfig {
  std::string experiment = "simulate";
  TorusGrid grid;       // defaults: n = 64, length = 2*pi
  double alpha = 0.0;   // single-run stress modulus
  std::vector<double> alpha_list;  // sweep levels; empty: dyadic default
  double nu = 0.1;
  double T = 1.0;
  double dt = 1e-3;
  InitialCondition initial;
  ForcingSpec forcing;
  NoiseCoefficients noise;
  int paths = 32;
  uint64_t seed = 2026;
  std::vector<double> epsilons = {0.05, 0.1, 0.2};
  std::vector<double> deltas;
  OutputConfig output;
};

// Parses and validates a config document.  Throws ConfigError with a
// line-anchored message for syntax errors and a key-path-anchored message
// for schema or validation errors; unknown keys are errors.
RunConfig parse_config(const std::string& text);

// Reads the file and parses it.  Throws IoError if unreadable.
RunConfig load_config(const std::string& path);

// Canonical JSON form: every key present, fixed layout, sorted keys.
// parse_config(canonical_config(c)) reproduces c exactly.
std::string canonical_config(const RunConfig& cfg);

// FNV-1a digest of the canonical form; stamped into every output file.
uint64_t config_hash(const RunConfig& cfg);

// Realizes the configured initial velocity on a grid.
SpectralVectorField initial_field(const InitialCondition& ic, const TorusGrid& g);

// Single-trajectory parameters at cfg.alpha.
ModelParams model_params(const RunConfig& cfg);

// Sweep study over cfg.alpha_list, or the dyadic default ladder
// {2^-1, ..., 2^-8, 0} when the list is empty.
SweepConfig sweep_config(const RunConfig& cfg);
std::vector<double> default_alpha_ladder();

}  // namespace sgf
