#pragma once

#include <string>

#include "sgf/field.hpp"

namespace sgf {

// One stored velocity field with its simulation time.
struct Snapshot {
  SpectralVectorField field;
  double time = 0.0;
};

// Binary spectral snapshot, little-endian throughout:
//   16 bytes   magic "sgfluid-spectral"
//   f64        box length L
//   u64        grid size n
//   u64        component count (2)
//   f64        time stamp
//   f64 pairs  coefficients: for each mode in row-major storage order,
//              component 0 (re, im) then component 1 (re, im)
// The payload is written bit for bit, so a round trip reproduces the
// field exactly.
void write_snapshot(const std::string& path, const SpectralVectorField& u, double time);

// Reads a snapshot and checks magic, header sanity, and payload size.
// The divergence-free flag is restored by measuring the spectral
// divergence against a 1e-12 relative tolerance.
Snapshot read_snapshot(const std::string& path);

}  // namespace sgf
