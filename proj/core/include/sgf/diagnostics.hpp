#pragma once

#include <span>
#include <vector>

#include "sgf/model.hpp"
#include "sgf/trajectory.hpp"
#include "sgf/transform.hpp"
#include "sgf/wiener.hpp"

namespace sgf {

// L^2 norm of (1 + alpha |k|^2) curl u.
double w_norm(const SpectralVectorField& u, double alpha);

// All five tracked norms of one state. The workspace is needed because the
// alpha correction term behind r_h4 is evaluated pseudospectrally.
NormRecord record_norms(const SpectralVectorField& u, double alpha,
                        Workspace& ws, double t = 0.0);

// Squared L^2 distance |a - b|^2 over the nonzero modes, summed exactly
// like sobolev_norm with s = 0.
double h_distance_sq(const SpectralVectorField& a, const SpectralVectorField& b);

// L^2-in-time L^2-in-space distance between two trajectories on the same
// time grid, by left-endpoint quadrature over the shared snapshot times.
// Both trajectories must carry snapshots with equal stride.
double l2t_h_distance(const Trajectory& a, const Trajectory& b);

// Time-increment modulus at lag delta:
//   sup over shifts theta in {+-dt, ..., +-delta} of
//   sum_i dt |u(t_i + theta) - u(t_i)|_{H^-4}^2
// where i runs over every base point whose shifted partner stays inside
// [0, T]. Monotone nondecreasing in delta by construction. Requires every
// state, so the trajectory must have snapshot stride 1; delta must be a
// positive multiple of dt, at most the horizon.
double increment_modulus(const Trajectory& traj, double delta);

// Defect of the discrete energy balance across one step: the change of
// |u|_V^2 minus its expected drift (viscous dissipation, forcing work, the
// Ito correction) and the martingale part resolved with the given Wiener
// increment. Zero mean in expectation; O(dt^2) per step without noise.
double ito_residual_step(const SpectralVectorField& u_from,
                         const SpectralVectorField& u_to,
                         const ModelParams& p, double t,
                         std::span<const double> dw);

// Per-step residuals recomputed from stored states. The trajectory must
// have stride-1 snapshots covering the whole run of the given path.
std::vector<double> energy_residual(const Trajectory& traj,
                                    const WienerPath& path,
                                    const ModelParams& p);

}  // namespace sgf
