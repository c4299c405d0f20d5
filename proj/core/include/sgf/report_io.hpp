#pragma once

#include <cstdint>
#include <string>

#include "sgf/harness.hpp"
#include "sgf/trajectory.hpp"

namespace sgf {

// Shortest exact decimal form of a double (%.17g); every emitted number
// round-trips bit for bit.
std::string format_number(double x);

// CSV emission.  Every file starts with two comment lines recording the
// config hash and seed, then a header row.  Numbers are written with
// format_number, so identical data always produces identical bytes.

// t, h_norm, grad_norm, v_norm, w_norm, remainder_h4 per recorded step.
void write_norms_csv(const std::string& path, const Trajectory& traj,
                     uint64_t hash, uint64_t seed);

// Sweep outputs into dir:
//   report.csv      alpha, path, distance, excluded
//   moments.csv     alpha, mean_distance, sup_v_moment, int_grad_moment
//   remainder.csv   alpha, remainder_moment
//   modulus.csv     alpha, delta, mean_modulus
//   exceedance.csv  alpha, epsilon, fraction, stderr
//   summary.txt     provenance, exclusions, fitted slopes
// The ensemble flavor writes the estimate files only (moments, remainder,
// modulus, summary).
void write_sweep_files(const std::string& dir, const SweepReport& rep, uint64_t hash);
void write_ensemble_files(const std::string& dir, const SweepReport& rep, uint64_t hash);

}  // namespace sgf
