#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sgf/model.hpp"
#include "sgf/trajectory.hpp"
#include "sgf/transform.hpp"
#include "sgf/wiener.hpp"

namespace sgf {

// Taylor-Green vortex  u = a (sin x1 cos x2, -cos x1 sin x2)  as spectral
// coefficients. Exact on the 2 pi box only; other lengths are refused.
SpectralVectorField taylor_green(const TorusGrid& grid, double amplitude);

// One semi-implicit Euler-Maruyama step of length p.dt starting at time t.
// The Stokes part is treated implicitly per mode, the nonlinearity, forcing
// and noise explicitly; the inverse Helmholtz weight 1/(1 + alpha |k|^2)
// multiplies every explicit term. dw holds one Wiener increment per noise
// component. If cfl is non-null it receives dt * max|N| / max|u|, a cheap
// advective stability indicator. Throws BlowupError when the new state is
// not finite.
SpectralVectorField step(const SpectralVectorField& u, const ModelParams& p,
                         double t, std::span<const double> dw, Workspace& ws,
                         double* cfl = nullptr);

struct SimulateOptions {
  bool with_norms = true;
  int snapshot_stride = 0;   // keep every k-th state; 0 disables
  bool with_residuals = false;
};

using StepObserver =
    std::function<void(int index, double t, const SpectralVectorField& u)>;

// Integrates from p.u0 over [0, T] consuming exactly path.steps() increments.
// The path must match dt and the noise dimension. Observers fire at every
// time including t = 0, after norms and snapshots are recorded.
Trajectory simulate(const ModelParams& p, const WienerPath& path,
                    Workspace& ws, const SimulateOptions& opts = {},
                    std::span<const StepObserver> observers = {});

}  // namespace sgf
