#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <doctest.h>
#include "helpers.hpp"
#include "sgf/diagnostics.hpp"
#include "sgf/integrator.hpp"
#include "sgf/nonlinear.hpp"
#include "sgf/operators.hpp"

using namespace sgf;

namespace {

const double kPi = std::numbers::pi;

// Hand-built trajectory whose i-th state is scale(i) * base.
Trajectory ramp_trajectory(const SpectralVectorField& base, int nsteps, double dt,
                           const std::function<double(int)>& scale) {
  Trajectory traj;
  traj.dt = dt;
  traj.snapshot_stride = 1;
  for (int i = 0; i <= nsteps; ++i) {
    traj.times.push_back(i * dt);
    SpectralVectorField s = base;
    s.scale(scale(i));
    traj.snapshots.push_back(std::move(s));
  }
  return traj;
}

ModelParams noisy_params(int n, double alpha, double T, double dt) {
  ModelParams p;
  p.grid = TorusGrid(2.0 * kPi, n);
  p.alpha = alpha;
  p.nu = 0.1;
  p.T = T;
  p.dt = dt;
  p.u0 = SpectralVectorField(p.grid);
  p.u0.set_divergence_free(true);
  p.noise.components.push_back(
      {{{0, 1, Complex{0.3, 0.0}, Complex{}}}, Modulation::constant()});
  p.noise.components.push_back(
      {{{1, 1, Complex{0.2, 0.0}, Complex{-0.2, 0.0}}}, Modulation::cosine(0.4)});
  return p;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("vorticity norm closed form and filter weight") {
  const TorusGrid g(2.0 * kPi, 16);
  SpectralVectorField u(g);
  const double b = 0.7;
  sgt::add_mode_pair(u, 1, 0, Complex{}, Complex{b, 0.0});

  // curl of this mode pair has magnitude b at (1,0) and (-1,0); the filter
  // weight at |k|^2 = 1 is (1 + alpha).
  for (const double alpha : {0.0, 1.0, 2.5}) {
    CAPTURE(alpha);
    const double expected = (1.0 + alpha) * 2.0 * kPi * std::sqrt(2.0) * b;
    CHECK(w_norm(u, alpha) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK_THROWS_AS(w_norm(u, -0.5), InvalidArgument);
}

TEST_CASE("unfiltered vorticity norm equals the gradient norm") {
  // 2D divergence-free identity: |curl u| = |k||u| mode by mode.
  std::mt19937_64 rng(21);
  const TorusGrid g(2.0 * kPi, 16);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralVectorField u = sgt::random_divfree(g, rng);
    CHECK(w_norm(u, 0.0) == doctest::Approx(sobolev_norm(u, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("record_norms agrees with the underlying operators") {
  std::mt19937_64 rng(22);
  const TorusGrid g(2.0 * kPi, 16);
  Workspace ws(g);
  const SpectralVectorField u = sgt::random_divfree(g, rng);

  const double alpha = 0.4;
  const NormRecord r = record_norms(u, alpha, ws, 1.25);
  CHECK(r.t == 1.25);
  CHECK(r.h == sobolev_norm(u, 0.0));
  CHECK(r.grad == sobolev_norm(u, 1.0));
  CHECK(r.v == doctest::Approx(std::sqrt(inner_product_v(u, u, alpha))).epsilon(1e-12));
  CHECK(r.w == w_norm(u, alpha));
  CHECK(r.r_h4 == doctest::Approx(sobolev_norm(remainder(u, alpha, ws), -4.0)).epsilon(1e-12));

  const NormRecord r0 = record_norms(u, 0.0, ws);
  CHECK(r0.r_h4 == 0.0);
  CHECK(r0.v == r0.h);
  CHECK(r0.w == doctest::Approx(r0.grad).epsilon(1e-12));
}

TEST_CASE("norm equivalence window holds per record") {
  std::mt19937_64 rng(23);
  const TorusGrid g(2.0 * kPi, 16);
  Workspace ws(g);
  const double pc = g.poincare_constant();
  for (const double alpha : {0.05, 0.3}) {
    CAPTURE(alpha);
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralVectorField u = sgt::random_divfree(g, rng);
      const NormRecord r = record_norms(u, alpha, ws);
      const double vsq = r.v * r.v;
      const double gsq = r.grad * r.grad;
      CHECK(gsq >= vsq / (pc + alpha) * (1.0 - 1e-12));
      CHECK(gsq <= vsq / alpha * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("filtering can only grow the negative norm") {
  std::mt19937_64 rng(24);
  const TorusGrid g(2.0 * kPi, 16);
  for (const double alpha : {0.0, 0.1, 2.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralVectorField u = sgt::random_field(g, rng);
      const SpectralVectorField f = helmholtz_apply(u, alpha);
      CHECK(sobolev_norm(u, -4.0) <= sobolev_norm(f, -4.0) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("trajectory distance basics") {
  std::mt19937_64 rng(25);
  const TorusGrid g(2.0 * kPi, 16);
  const SpectralVectorField c = sgt::random_divfree(g, rng);
  const SpectralVectorField zero(g);
  const double dt = 0.1;
  const int nsteps = 5;

  const Trajectory a = ramp_trajectory(c, nsteps, dt, [](int) { return 1.0; });
  const Trajectory z = ramp_trajectory(zero, nsteps, dt, [](int) { return 0.0; });

  SUBCASE("identical trajectories are at distance zero") {
    CHECK(l2t_h_distance(a, a) == 0.0);
  }

  SUBCASE("constant field against rest gives |c| sqrt(T)") {
    const double expected = sobolev_norm(c, 0.0) * std::sqrt(nsteps * dt);
    CHECK(l2t_h_distance(a, z) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(l2t_h_distance(z, a) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("distance is homogeneous in the field") {
    Trajectory a3 = ramp_trajectory(c, nsteps, dt, [](int) { return 3.0; });
    CHECK(l2t_h_distance(a3, z) == doctest::Approx(3.0 * l2t_h_distance(a, z)).epsilon(1e-12));
  }

  SUBCASE("coarser shared snapshot grids are accepted") {
    Trajectory ac = a;
    Trajectory zc = z;
    ac.snapshot_stride = 2;
    zc.snapshot_stride = 2;
    ac.snapshots = {a.snapshots[0], a.snapshots[2], a.snapshots[4]};
    zc.snapshots = {z.snapshots[0], z.snapshots[2], z.snapshots[4]};
    const double expected = sobolev_norm(c, 0.0) * std::sqrt(2.0 * dt * 2.0);
    CHECK(l2t_h_distance(ac, zc) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("mismatched grids are rejected") {
    Trajectory b = a;
    b.snapshot_stride = 2;
    CHECK_THROWS_AS(l2t_h_distance(a, b), InvalidArgument);

    Trajectory shorter = ramp_trajectory(c, nsteps - 1, dt, [](int) { return 1.0; });
    CHECK_THROWS_AS(l2t_h_distance(a, shorter), InvalidArgument);

    Trajectory coarse = ramp_trajectory(c, nsteps, 2.0 * dt, [](int) { return 1.0; });
    CHECK_THROWS_AS(l2t_h_distance(a, coarse), InvalidArgument);

    Trajectory empty;
    CHECK_THROWS_AS(l2t_h_distance(a, empty), InvalidArgument);

    const TorusGrid g2(2.0 * kPi, 32);
    const SpectralVectorField c2(g2);
    Trajectory other = ramp_trajectory(c2, nsteps, dt, [](int) { return 1.0; });
    CHECK_THROWS_AS(l2t_h_distance(a, other), InvalidArgument);
  }
}

TEST_CASE("two-state modulus is the single increment energy") {
  std::mt19937_64 rng(26);
  const TorusGrid g(2.0 * kPi, 16);
  const double dt = 0.05;
  Trajectory traj;
  traj.dt = dt;
  traj.snapshot_stride = 1;
  traj.times = {0.0, dt};
  traj.snapshots.push_back(sgt::random_divfree(g, rng));
  traj.snapshots.push_back(sgt::random_divfree(g, rng));

  SpectralVectorField d = traj.snapshots[1];
  d -= traj.snapshots[0];
  const double inc = sobolev_norm(d, -4.0);
  CHECK(increment_modulus(traj, dt) == doctest::Approx(dt * inc * inc).epsilon(1e-14));
}

TEST_CASE("linear ramp modulus closed form") {
  std::mt19937_64 rng(27);
  const TorusGrid g(2.0 * kPi, 16);
  const SpectralVectorField c = sgt::random_divfree(g, rng);
  const double dt = 0.1;
  const int nsteps = 10;
  const Trajectory traj =
      ramp_trajectory(c, nsteps, dt, [dt](int i) { return i * dt; });

  const double csq = std::pow(sobolev_norm(c, -4.0), 2);
  for (const int d : {1, 2, 3}) {
    CAPTURE(d);
    // Worst shift is theta = d dt (window still dominated by the shift
    // magnitude at these small lags), with nsteps - d + 1 surviving terms.
    const double delta = d * dt;
    const double expected = dt * (nsteps - d + 1) * delta * delta * csq;
    CHECK(increment_modulus(traj, delta) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("modulus never decreases with the lag") {
  ModelParams p = noisy_params(8, 0.2, 0.4, 0.02);
  p.u0 = taylor_green(p.grid, 0.7);
  Workspace ws(p.grid);
  SimulateOptions opts;
  opts.with_norms = false;
  opts.snapshot_stride = 1;
  const WienerPath path = sample_wiener(p.T, p.dt, p.noise.dimension(), 31);
  const Trajectory traj = simulate(p, path, ws, opts);

  double prev = 0.0;
  for (int m = 1; m <= traj.steps(); ++m) {
    const double cur = increment_modulus(traj, m * p.dt);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("modulus rejects unusable trajectories") {
  std::mt19937_64 rng(28);
  const TorusGrid g(2.0 * kPi, 16);
  const SpectralVectorField c = sgt::random_divfree(g, rng);
  const double dt = 0.1;
  Trajectory traj = ramp_trajectory(c, 5, dt, [](int i) { return double(i); });

  CHECK_THROWS_AS(increment_modulus(traj, 0.0), InvalidArgument);
  CHECK_THROWS_AS(increment_modulus(traj, -dt), InvalidArgument);
  CHECK_NOTHROW(increment_modulus(traj, 5 * dt));                      // = horizon
  CHECK_THROWS_AS(increment_modulus(traj, 6 * dt), InvalidArgument);   // beyond it
  CHECK_THROWS_AS(increment_modulus(traj, 1.5 * dt), InvalidArgument); // off grid

  Trajectory decimated = traj;
  decimated.snapshot_stride = 2;
  decimated.snapshots = {traj.snapshots[0], traj.snapshots[2], traj.snapshots[4]};
  CHECK_THROWS_AS(increment_modulus(decimated, dt), InvalidArgument);

  Trajectory bare = traj;
  bare.snapshots.clear();
  bare.snapshot_stride = 0;
  CHECK_THROWS_AS(increment_modulus(bare, dt), InvalidArgument);

  Trajectory single = ramp_trajectory(c, 0, dt, [](int) { return 1.0; });
  CHECK_THROWS_AS(increment_modulus(single, dt), InvalidArgument);
}

TEST_CASE("resting system has identically zero residuals") {
  ModelParams p;
  p.grid = TorusGrid(2.0 * kPi, 16);
  p.T = 0.2;
  p.dt = 0.05;
  p.u0 = SpectralVectorField(p.grid);
  p.u0.set_divergence_free(true);
  Workspace ws(p.grid);
  SimulateOptions opts;
  opts.snapshot_stride = 1;
  opts.with_residuals = true;
  const WienerPath path = sample_wiener(p.T, p.dt, 0, 1);
  const Trajectory traj = simulate(p, path, ws, opts);

  REQUIRE(traj.residuals.size() == 4);
  for (const double r : traj.residuals) CHECK(r == 0.0);

  const std::vector<double> offline = energy_residual(traj, path, p);
  REQUIRE(offline.size() == 4);
  for (const double r : offline) CHECK(r == 0.0);
}

TEST_CASE("deterministic residual total scales linearly with the step") {
  // Taylor-Green keeps the dynamics mode-wise linear (its nonlinearity
  // projects away), so the accumulated defect of the implicit energy
  // update is cleanly first order in dt.
  ModelParams base;
  base.grid = TorusGrid(2.0 * kPi, 16);
  base.alpha = 0.3;
  base.nu = 0.1;
  base.T = 0.5;
  base.u0 = taylor_green(base.grid, 1.0);
  Workspace ws(base.grid);

  const auto total = [&](double dt) {
    ModelParams p = base;
    p.dt = dt;
    SimulateOptions opts;
    opts.with_norms = false;
    opts.with_residuals = true;
    const Trajectory traj = simulate(p, sample_wiener(p.T, dt, 0, 1), ws, opts);
    double acc = 0.0;
    for (const double r : traj.residuals) acc += std::abs(r);
    return acc;
  };

  const double coarse = total(0.05);
  const double fine = total(0.025);
  CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("residual mean vanishes over paths") {
  ModelParams p = noisy_params(8, 0.2, 0.06, 0.02);
  p.u0 = taylor_green(p.grid, 0.5);
  Workspace ws(p.grid);
  SimulateOptions opts;
  opts.with_norms = false;
  opts.with_residuals = true;

  const int paths = 512;
  double mean = 0.0, m2 = 0.0;
  double lo = 0.0, hi = 0.0;
  for (int j = 0; j < paths; ++j) {
    const WienerPath path =
        sample_wiener(p.T, p.dt, p.noise.dimension(), substream_seed(505, j));
    const Trajectory traj = simulate(p, path, ws, opts);
    double sum = 0.0;
    for (const double r : traj.residuals) sum += r;
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
    const double delta = sum - mean;
    mean += delta / (j + 1);
    m2 += delta * (sum - mean);
  }
  const double stderr_mean = std::sqrt(m2 / (paths - 1) / paths);
  CHECK(std::abs(mean) <= 4.0 * stderr_mean + 1e-6);
  CHECK(lo < 0.0);  // sign-indefinite
  CHECK(hi > 0.0);
}

TEST_CASE("offline residuals match the inline stream") {
  ModelParams p = noisy_params(8, 0.15, 0.2, 0.02);
  p.u0 = taylor_green(p.grid, 0.6);
  p.forcing.entries.push_back({{1, 0, Complex{}, Complex{0.2, 0.0}}, Modulation::cosine(0.3)});
  Workspace ws(p.grid);
  SimulateOptions opts;
  opts.snapshot_stride = 1;
  opts.with_residuals = true;
  const WienerPath path = sample_wiener(p.T, p.dt, p.noise.dimension(), 77);
  const Trajectory traj = simulate(p, path, ws, opts);

  const std::vector<double> offline = energy_residual(traj, path, p);
  REQUIRE(offline.size() == traj.residuals.size());
  for (size_t i = 0; i < offline.size(); ++i) CHECK(offline[i] == traj.residuals[i]);
}

TEST_CASE("residual recomputation rejects unusable inputs") {
  ModelParams p = noisy_params(8, 0.15, 0.1, 0.02);
  p.u0 = taylor_green(p.grid, 0.6);
  Workspace ws(p.grid);
  SimulateOptions opts;
  opts.snapshot_stride = 1;
  const WienerPath path = sample_wiener(p.T, p.dt, p.noise.dimension(), 78);
  const Trajectory traj = simulate(p, path, ws, opts);

  Trajectory decimated = traj;
  decimated.snapshot_stride = 2;
  CHECK_THROWS_AS(energy_residual(decimated, path, p), InvalidArgument);

  CHECK_THROWS_AS(energy_residual(traj, sample_wiener(0.06, p.dt, 2, 78), p),
                  InvalidArgument);
  CHECK_THROWS_AS(energy_residual(traj, sample_wiener(p.T, p.dt, 1, 78), p), InvalidArgument);
}

}  // TEST_SUITE
