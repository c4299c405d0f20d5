#include "sgf/integrator.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "sgf/diagnostics.hpp"
#include "sgf/nonlinear.hpp"
#include "sgf/operators.hpp"

namespace sgf {

SpectralVectorField taylor_green(const TorusGrid& grid, double amplitude) {
  const double twopi = 2.0 * std::numbers::pi;
  if (std::abs(grid.length - twopi) > 1e-12 * twopi) {
    throw InvalidArgument("Taylor-Green vortex is exact on the 2 pi box only");
  }
  SpectralVectorField u(grid);
  const Complex q{0.0, -0.25 * amplitude};
  const auto put = [&](int j1, int j2, Complex a0, Complex a1) {
    const int i1 = grid.row_of_checked(j1);
    const int i2 = grid.row_of_checked(j2);
    u.at(0, i1, i2) = a0;
    u.at(1, i1, i2) = a1;
    u.at(0, grid.conj_row(i1), grid.conj_row(i2)) = std::conj(a0);
    u.at(1, grid.conj_row(i1), grid.conj_row(i2)) = std::conj(a1);
  };
  put(1, 1, q, -q);
  put(1, -1, q, q);
  u.set_divergence_free(true);
  return u;
}

SpectralVectorField step(const SpectralVectorField& u, const ModelParams& p,
                         double t, std::span<const double> dw, Workspace& ws,
                         double* cfl) {
  if (!(u.grid() == p.grid)) throw InvalidArgument("state lives on a different grid");
  if (!u.divergence_free()) throw InvalidArgument("state must be divergence-free");

  const SpectralVectorField nl = nonlinear_term(u, p.alpha, ws);
  const SpectralVectorField f = eval_forcing(p.forcing, p.grid, t, p.T);
  const SpectralVectorField s = noise_increment(p.noise, p.grid, t, p.T, dw);

  if (cfl != nullptr) {
    const double umax = max_abs_coeff(u);
    *cfl = umax > 0.0 ? p.dt * max_abs_coeff(nl) / umax : 0.0;
  }

  SpectralVectorField out(p.grid);
  double sumsq = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int i1 = 0; i1 < p.grid.n; ++i1) {
      for (int i2 = 0; i2 < p.grid.n; ++i2) {
        const double lam = p.grid.lambda(i1, i2);
        const double h = 1.0 / (1.0 + p.alpha * lam);
        const Complex num = u.at(c, i1, i2) +
                            p.dt * h * (f.at(c, i1, i2) - nl.at(c, i1, i2)) +
                            h * s.at(c, i1, i2);
        const Complex next = num / (1.0 + p.dt * p.nu * lam * h);
        out.at(c, i1, i2) = next;
        sumsq += std::norm(next);
      }
    }
  }
  out.zero_mean_mode();
  out.set_divergence_free(true);
  if (!std::isfinite(sumsq)) {
    throw BlowupError(t + p.dt, "state became non-finite during a step");
  }
  return out;
}

Trajectory simulate(const ModelParams& p, const WienerPath& path,
                    Workspace& ws, const SimulateOptions& opts,
                    std::span<const StepObserver> observers) {
  validate_params(p);
  if (opts.snapshot_stride < 0) {
    throw InvalidArgument("snapshot stride must be >= 0");
  }
  const int nsteps = step_count(p.T, p.dt);
  if (path.dimension != p.noise.dimension()) {
    throw InvalidArgument("path dimension does not match the noise");
  }
  // A zero-dimensional path carries no increments, so its length and step
  // are meaningless; deterministic runs accept any such path.
  if (path.dimension > 0) {
    if (path.steps() != nsteps) {
      throw InvalidArgument("path length does not match the horizon");
    }
    if (nsteps > 0 && std::abs(path.dt - p.dt) > 1e-12 * p.dt) {
      throw InvalidArgument("path step does not match the model");
    }
  }
  if (!(ws.grid() == p.grid)) {
    throw InvalidArgument("workspace lives on a different grid");
  }

  Trajectory traj;
  traj.dt = p.dt;
  traj.snapshot_stride = opts.snapshot_stride;
  traj.times.reserve(static_cast<size_t>(nsteps) + 1);

  SpectralVectorField u = p.u0;
  const auto emit = [&](int index, double t, const SpectralVectorField& x) {
    traj.times.push_back(t);
    if (opts.with_norms) {
      traj.records.push_back(record_norms(x, p.alpha, ws, t));
    }
    if (opts.snapshot_stride > 0 && index % opts.snapshot_stride == 0) {
      traj.snapshots.push_back(x);
    }
    for (const StepObserver& ob : observers) ob(index, t, x);
  };

  emit(0, 0.0, u);
  for (int i = 0; i < nsteps; ++i) {
    const double t = i * p.dt;
    double cfl = 0.0;
    SpectralVectorField next = step(u, p, t, path.increment(i), ws, &cfl);
    if (cfl > 0.5) traj.cfl_warning = true;
    if (opts.with_residuals) {
      traj.residuals.push_back(
          ito_residual_step(u, next, p, t, path.increment(i)));
    }
    u = std::move(next);
    emit(i + 1, (i + 1) * p.dt, u);
  }
  return traj;
}

}  // namespace sgf
