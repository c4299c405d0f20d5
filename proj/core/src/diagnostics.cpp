#include "sgf/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "sgf/nonlinear.hpp"
#include "sgf/operators.hpp"

namespace sgf {

namespace {

// Squared Sobolev distance L^2 sum_{k != 0} |k|^{2s} |a_hat - b_hat|^2,
// summed in the same order and with the same weights as sobolev_norm so
// the two agree bit for bit.
double sobolev_distance_sq(const SpectralVectorField& a,
                           const SpectralVectorField& b, double s) {
  a.check_same_grid(b);
  const TorusGrid& g = a.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      if (g.is_mean(i1, i2)) continue;
      const double w = sobolev_mode_weight(g.lambda(i1, i2), s);
      sum += w * (std::norm(a.at(0, i1, i2) - b.at(0, i1, i2)) +
                  std::norm(a.at(1, i1, i2) - b.at(1, i1, i2)));
    }
  }
  return g.length * g.length * sum;
}

void require_close(double x, double y, const char* what) {
  if (std::abs(x - y) > 1e-12 * std::max({1.0, std::abs(x), std::abs(y)})) {
    throw InvalidArgument(what);
  }
}

}  // namespace

double w_norm(const SpectralVectorField& u, double alpha) {
  if (alpha < 0.0) throw InvalidArgument("alpha must be >= 0");
  const TorusGrid& g = u.grid();
  const std::vector<Complex> om = curl_coefficients(u);
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double w = 1.0 + alpha * g.lambda(i1, i2);
      sum += w * w * std::norm(om[static_cast<size_t>(i1) * g.n + i2]);
    }
  }
  return std::sqrt(g.length * g.length * sum);
}

NormRecord record_norms(const SpectralVectorField& u, double alpha,
                        Workspace& ws, double t) {
  NormRecord r;
  r.t = t;
  r.h = sobolev_norm(u, 0.0);
  r.grad = sobolev_norm(u, 1.0);
  r.v = std::sqrt(r.h * r.h + alpha * r.grad * r.grad);
  r.w = w_norm(u, alpha);
  r.r_h4 = sobolev_norm(remainder(u, alpha, ws), -4.0);
  return r;
}

double h_distance_sq(const SpectralVectorField& a, const SpectralVectorField& b) {
  return sobolev_distance_sq(a, b, 0.0);
}

double l2t_h_distance(const Trajectory& a, const Trajectory& b) {
  if (a.snapshots.empty() || b.snapshots.empty()) {
    throw InvalidArgument("distance needs snapshots on both trajectories");
  }
  if (a.snapshot_stride != b.snapshot_stride ||
      a.snapshots.size() != b.snapshots.size() ||
      a.times.size() != b.times.size()) {
    throw InvalidArgument("trajectories live on different time grids");
  }
  require_close(a.dt, b.dt, "trajectories live on different time grids");
  a.snapshots[0].check_same_grid(b.snapshots[0]);

  const double dt_eff = a.dt * a.snapshot_stride;
  double acc = 0.0;
  for (size_t i = 0; i + 1 < a.snapshots.size(); ++i) {
    acc += sobolev_distance_sq(a.snapshots[i], b.snapshots[i], 0.0);
  }
  return std::sqrt(dt_eff * acc);
}

double increment_modulus(const Trajectory& traj, double delta) {
  if (traj.snapshot_stride != 1) {
    throw InvalidArgument("increment modulus needs every state: record snapshots with stride 1");
  }
  const int count = static_cast<int>(traj.snapshots.size());
  if (count < 2) throw InvalidArgument("trajectory has fewer than two states");
  if (!(traj.dt > 0.0)) throw InvalidArgument("trajectory has no time step");
  const int nsteps = count - 1;
  if (!(delta > 0.0)) throw InvalidArgument("lag must be positive");
  const int d = static_cast<int>(std::llround(delta / traj.dt));
  if (d < 1 || std::abs(d * traj.dt - delta) > 1e-12 * std::max(1.0, delta)) {
    throw InvalidArgument("lag must be a whole number of time steps");
  }
  if (d > nsteps) throw InvalidArgument("lag exceeds the trajectory horizon");

  // For each shift theta = m dt with 0 < |m| <= d, sum the H^-4 increment
  // energies over every base point whose shifted partner stays inside
  // [0, horizon], then take the worst shift. Keying the window to the
  // shift rather than to delta makes the result exactly nondecreasing in
  // delta: a larger lag only enlarges the shift set.
  double sup = 0.0;
  for (int m = 1; m <= d; ++m) {
    for (const int shift : {m, -m}) {
      double acc = 0.0;
      for (int i = 0; i <= nsteps; ++i) {
        const int j = i + shift;
        if (j < 0 || j > nsteps) continue;
        acc += sobolev_distance_sq(traj.snapshots[static_cast<size_t>(i)],
                                   traj.snapshots[static_cast<size_t>(j)], -4.0);
      }
      sup = std::max(sup, traj.dt * acc);
    }
  }
  return sup;
}

double ito_residual_step(const SpectralVectorField& u_from,
                         const SpectralVectorField& u_to,
                         const ModelParams& p, double t,
                         std::span<const double> dw) {
  u_from.check_same_grid(u_to);
  if (static_cast<int>(dw.size()) != p.noise.dimension()) {
    throw InvalidArgument("Wiener increment dimension mismatch");
  }
  const double vsq_to = inner_product_v(u_to, u_to, p.alpha);
  const double vsq_from = inner_product_v(u_from, u_from, p.alpha);
  const double dissipation = 2.0 * p.nu * grad_inner(u_to, u_to) * p.dt;

  double work = 0.0;
  if (!p.forcing.entries.empty()) {
    const SpectralVectorField f = eval_forcing(p.forcing, p.grid, t, p.T);
    work = 2.0 * h_inner(f, u_from) * p.dt;
  }

  double ito = 0.0;
  double martingale = 0.0;
  for (int k = 0; k < p.noise.dimension(); ++k) {
    const SpectralVectorField gk = inverse_helmholtz(
        noise_component_field(p.noise.components[k], p.grid, t), p.alpha);
    ito += inner_product_v(gk, gk, p.alpha) * p.dt;
    martingale += 2.0 * inner_product_v(gk, u_from, p.alpha) * dw[k];
  }

  return vsq_to - vsq_from + dissipation - work - ito - martingale;
}

std::vector<double> energy_residual(const Trajectory& traj,
                                    const WienerPath& path,
                                    const ModelParams& p) {
  if (traj.snapshot_stride != 1) {
    throw InvalidArgument("energy residual needs stride-1 snapshots");
  }
  if (traj.snapshots.empty()) throw InvalidArgument("trajectory has no states");
  const int nsteps = static_cast<int>(traj.snapshots.size()) - 1;
  if (path.dimension != p.noise.dimension()) {
    throw InvalidArgument("path dimension does not match the noise");
  }
  if (path.dimension > 0 && path.steps() != nsteps) {
    throw InvalidArgument("path length does not match the trajectory");
  }
  if (nsteps > 0) {
    if (path.dimension > 0) {
      require_close(path.dt, p.dt, "path step does not match the model");
    }
    require_close(traj.dt, p.dt, "trajectory step does not match the model");
  }

  std::vector<double> out(static_cast<size_t>(nsteps));
  for (int i = 0; i < nsteps; ++i) {
    out[static_cast<size_t>(i)] =
        ito_residual_step(traj.snapshots[static_cast<size_t>(i)],
                          traj.snapshots[static_cast<size_t>(i) + 1], p,
                          i * p.dt, path.increment(i));
  }
  return out;
}

}  // namespace sgf
