#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>
#include "helpers.hpp"
#include "sgf/harness.hpp"
#include "sgf/integrator.hpp"
#include "sgf/operators.hpp"
#include "sgf/rng.hpp"
#include "sgf/wiener.hpp"

using namespace sgf;

namespace {

const double kPi = std::numbers::pi;

// Deterministic Taylor-Green setup: the nonlinearity projects away, so the
// whole sweep has a closed form (geometric decay per alpha level).
SweepConfig tg_config(int n, double nu, double T, double dt) {
  SweepConfig cfg;
  cfg.base.grid = TorusGrid(2.0 * kPi, n);
  cfg.base.nu = nu;
  cfg.base.T = T;
  cfg.base.dt = dt;
  cfg.base.u0 = taylor_green(cfg.base.grid, 1.0);
  cfg.paths = 1;
  cfg.epsilons = {0.1};
  cfg.deltas = {};
  return cfg;
}

SweepConfig noisy_config(int n, double T, double dt) {
  SweepConfig cfg = tg_config(n, 0.1, T, dt);
  cfg.base.noise.components.push_back(
      {{{0, 1, Complex{0.3, 0.0}, Complex{}}}, Modulation::constant()});
  cfg.base.noise.components.push_back(
      {{{1, 1, Complex{0.2, 0.0}, Complex{-0.2, 0.0}}}, Modulation::cosine(0.4)});
  return cfg;
}

// Per-level decay factor of the Taylor-Green mode (lambda = 2 on the 2pi box).
double tg_decay(const SweepConfig& cfg, double alpha) {
  const double h = 1.0 / (1.0 + 2.0 * alpha);
  return 1.0 / (1.0 + cfg.base.dt * cfg.base.nu * 2.0 * h);
}

// Closed-form L2-in-time distance between the alpha and alpha=0 decays.
double tg_distance(const SweepConfig& cfg, double alpha) {
  const double hn = sobolev_norm(cfg.base.u0, 0.0);
  const int nsteps = step_count(cfg.base.T, cfg.base.dt);
  double acc = 0.0, ra = 1.0, r0 = 1.0;
  for (int i = 0; i < nsteps; ++i) {
    acc += cfg.base.dt * hn * hn * (ra - r0) * (ra - r0);
    ra *= tg_decay(cfg, alpha);
    r0 *= tg_decay(cfg, 0.0);
  }
  return std::sqrt(acc);
}

void check_same_cell(const CellOutcome& a, const CellOutcome& b) {
  CHECK(a.distance == b.distance);
  CHECK(a.sup_v_sq == b.sup_v_sq);
  CHECK(a.int_grad_sq == b.int_grad_sq);
  CHECK(a.remainder_l2t == b.remainder_l2t);
  CHECK(a.modulus == b.modulus);
  CHECK(a.excluded == b.excluded);
}

void check_same_fit(const RateFit& a, const RateFit& b) {
  CHECK(a.slope == b.slope);
  CHECK(a.intercept == b.intercept);
  CHECK(a.stderr_slope == b.stderr_slope);
  CHECK(a.points == b.points);
}

void check_same_report(const SweepReport& a, const SweepReport& b) {
  REQUIRE(a.alphas == b.alphas);
  CHECK(a.paths == b.paths);
  CHECK(a.seed == b.seed);
  CHECK(a.path_checksums == b.path_checksums);
  CHECK(a.ref_l2t_norm == b.ref_l2t_norm);
  CHECK(a.mean_distance == b.mean_distance);
  CHECK(a.sup_v_moment == b.sup_v_moment);
  CHECK(a.int_grad_moment == b.int_grad_moment);
  CHECK(a.remainder_moment == b.remainder_moment);
  CHECK(a.mean_modulus == b.mean_modulus);
  REQUIRE(a.cells.size() == b.cells.size());
  for (size_t ai = 0; ai < a.cells.size(); ++ai) {
    REQUIRE(a.cells[ai].size() == b.cells[ai].size());
    for (size_t j = 0; j < a.cells[ai].size(); ++j) {
      check_same_cell(a.cells[ai][j], b.cells[ai][j]);
    }
  }
  REQUIRE(a.exceedance.size() == b.exceedance.size());
  for (size_t ai = 0; ai < a.exceedance.size(); ++ai) {
    REQUIRE(a.exceedance[ai].size() == b.exceedance[ai].size());
    for (size_t k = 0; k < a.exceedance[ai].size(); ++k) {
      CHECK(a.exceedance[ai][k].fraction == b.exceedance[ai][k].fraction);
      CHECK(a.exceedance[ai][k].stderr_fraction == b.exceedance[ai][k].stderr_fraction);
    }
  }
  check_same_fit(a.distance_fit, b.distance_fit);
  check_same_fit(a.remainder_fit, b.remainder_fit);
  REQUIRE(a.modulus_fit.size() == b.modulus_fit.size());
  for (size_t ai = 0; ai < a.modulus_fit.size(); ++ai) {
    check_same_fit(a.modulus_fit[ai], b.modulus_fit[ai]);
  }
  CHECK(a.excluded_cells == b.excluded_cells);
  CHECK(a.ok == b.ok);
  CHECK(a.failure == b.failure);
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("rate fit recovers an exact identity map") {
  const std::vector<double> xs = {0.5, 1.0, 2.0, 4.0};
  const RateFit fit = fit_rate(xs, xs);
  CHECK(fit.slope == 1.0);
  CHECK(fit.intercept == 0.0);
  CHECK(fit.stderr_slope == 0.0);
  CHECK(fit.points == 4);
}

TEST_CASE("rate fit recovers a quadratic power law") {
  const std::vector<double> xs = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> ys;
  for (const double x : xs) ys.push_back(3.0 * x * x);
  const RateFit fit = fit_rate(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.stderr_slope == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("rate fit brackets a noisy power law by its standard error") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    const double x = 0.1 * (i + 1);
    xs.push_back(x);
    ys.push_back(2.5 * std::pow(x, 1.7) * std::exp(0.05 * counter_normal(7, i, 0)));
  }
  const RateFit fit = fit_rate(xs, ys);
  CHECK(fit.points == 20);
  CHECK(fit.stderr_slope > 0.0);
  CHECK(fit.stderr_slope < 0.05);
  CHECK(std::abs(fit.slope - 1.7) <= 4.0 * fit.stderr_slope);
}

TEST_CASE("rate fit rejects unusable samples") {
  const std::vector<double> x3 = {1.0, 2.0, 3.0};
  const std::vector<double> x2 = {1.0, 2.0};
  CHECK_THROWS_AS(fit_rate(x3, x2), InvalidArgument);
  CHECK_THROWS_AS(fit_rate(x2, x2), InvalidArgument);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{1.0, -2.0, 3.0}, x3), InvalidArgument);
  CHECK_THROWS_AS(fit_rate(x3, std::vector<double>{1.0, 0.0, 3.0}), InvalidArgument);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{2.0, 2.0, 2.0}, x3), InvalidArgument);
}

TEST_CASE("exceedance fractions count strict threshold crossings") {
  const std::vector<double> d = {1.0, 2.0, 3.0, 4.0};
  ProbEstimate est = estimate_probability(d, 2.0);
  CHECK(est.fraction == 0.5);
  CHECK(est.stderr_fraction == doctest::Approx(0.25).epsilon(1e-15));

  est = estimate_probability(d, 100.0);
  CHECK(est.fraction == 0.0);
  CHECK(est.stderr_fraction == 0.0);

  est = estimate_probability(d, 0.5);
  CHECK(est.fraction == 1.0);
  CHECK(est.stderr_fraction == 0.0);

  CHECK_THROWS_AS(estimate_probability({}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_probability(d, 0.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_probability(d, -1.0), InvalidArgument);
}

TEST_CASE("sweep validation rejects malformed studies") {
  SweepConfig good = noisy_config(16, 0.05, 0.01);
  good.alphas = {0.5, 0.25, 0.0};
  good.deltas = {0.01, 0.05};
  CHECK_NOTHROW(validate_sweep(good));

  SweepConfig cfg = good;
  cfg.alphas = {};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.alphas = {0.5, 0.25};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.alphas = {0.0, 0.0};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.alphas = {0.5, -0.25, 0.0};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.alphas = {0.25, 0.5, 0.0};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.paths = 0;
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.epsilons = {0.1, 0.0};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  cfg = good;
  cfg.deltas = {0.015};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);
  cfg.deltas = {0.0};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);
  cfg.deltas = {good.base.T + good.base.dt};
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);
  cfg.deltas = {good.base.T};
  CHECK_NOTHROW(validate_sweep(cfg));

  cfg = good;
  cfg.base.dt = 0.0;
  CHECK_THROWS_AS(validate_sweep(cfg), InvalidArgument);

  CHECK_THROWS_AS(run_sweep(good, 0), InvalidArgument);
}

TEST_CASE("two-level sweep reproduces the closed-form eigenfield distance") {
  SweepConfig cfg = tg_config(16, 0.05, 0.1, 0.01);
  cfg.alphas = {0.5, 0.0};
  const SweepReport rep = run_sweep(cfg);

  REQUIRE(rep.cells.size() == 2);
  REQUIRE(rep.cells[0].size() == 1);
  CHECK(rep.cells[0][0].distance ==
        doctest::Approx(tg_distance(cfg, 0.5)).epsilon(1e-10));
  CHECK(rep.cells[1][0].distance == 0.0);
  CHECK(rep.mean_distance[0] == rep.cells[0][0].distance);

  const double hn = sobolev_norm(cfg.base.u0, 0.0);
  const int nsteps = step_count(cfg.base.T, cfg.base.dt);
  double refsq = 0.0, igrad = 0.0, r0 = 1.0;
  for (int i = 0; i < nsteps; ++i) {
    refsq += cfg.base.dt * hn * hn * r0 * r0;
    igrad += cfg.base.dt * 2.0 * hn * hn * r0 * r0;
    r0 *= tg_decay(cfg, 0.0);
  }
  CHECK(rep.ref_l2t_norm[0] == doctest::Approx(std::sqrt(refsq)).epsilon(1e-10));
  CHECK(rep.cells[1][0].int_grad_sq == doctest::Approx(igrad).epsilon(1e-10));

  // sup of the v norm is attained at t = 0; |grad u|^2 = 2 |u|^2 for this field.
  CHECK(rep.cells[0][0].sup_v_sq ==
        doctest::Approx(hn * hn * (1.0 + 2.0 * 0.5)).epsilon(1e-10));
  CHECK(rep.cells[1][0].sup_v_sq == doctest::Approx(hn * hn).epsilon(1e-10));
  CHECK(rep.remainder_moment[1] == 0.0);

  // The two decays stay within a tenth of the reference size here.
  CHECK(rep.exceedance[0][0].fraction == 0.0);
  CHECK(rep.exceedance[1][0].fraction == 0.0);
  CHECK(rep.distance_fit.points == 0);
  CHECK(rep.excluded_cells == 0);
  CHECK(rep.ok);
  CHECK(rep.failure.empty());
}

TEST_CASE("fitted convergence rate matches an independent fit of the closed form") {
  SweepConfig cfg = tg_config(16, 0.05, 0.1, 0.01);
  cfg.alphas = {0.04, 0.02, 0.01, 0.0};
  const SweepReport rep = run_sweep(cfg);

  const std::vector<double> pos = {0.04, 0.02, 0.01};
  std::vector<double> expected;
  for (const double a : pos) expected.push_back(tg_distance(cfg, a));
  const RateFit oracle = fit_rate(pos, expected);

  CHECK(rep.distance_fit.points == 3);
  CHECK(rep.distance_fit.slope == doctest::Approx(oracle.slope).epsilon(1e-8));
  CHECK(rep.distance_fit.intercept == doctest::Approx(oracle.intercept).epsilon(1e-8));
  CHECK(rep.distance_fit.slope > 0.9);
  CHECK(rep.distance_fit.slope < 1.05);
}

TEST_CASE("reference-only sweep reports exact zeros") {
  SweepConfig cfg = noisy_config(16, 0.05, 0.01);
  cfg.alphas = {0.0};
  cfg.paths = 3;
  cfg.deltas = {0.02};
  const SweepReport rep = run_sweep(cfg);

  for (int j = 0; j < 3; ++j) {
    CHECK(rep.cells[0][static_cast<size_t>(j)].distance == 0.0);
    CHECK_FALSE(rep.cells[0][static_cast<size_t>(j)].excluded);
    CHECK(rep.ref_l2t_norm[static_cast<size_t>(j)] > 0.0);
  }
  CHECK(rep.mean_distance[0] == 0.0);
  CHECK(rep.remainder_moment[0] == 0.0);
  CHECK(rep.mean_modulus[0][0] > 0.0);
  for (const ProbEstimate& est : rep.exceedance[0]) CHECK(est.fraction == 0.0);
  CHECK(rep.distance_fit.points == 0);
  CHECK(rep.ok);
}

TEST_CASE("per-path streams do not move when the ensemble grows") {
  SweepConfig cfg = noisy_config(16, 0.04, 0.01);
  cfg.alphas = {0.3, 0.0};
  cfg.deltas = {0.01, 0.02};
  cfg.paths = 2;
  const SweepReport small = run_sweep(cfg);
  cfg.paths = 4;
  const SweepReport large = run_sweep(cfg);

  for (int j = 0; j < 2; ++j) {
    CHECK(small.path_checksums[static_cast<size_t>(j)] ==
          large.path_checksums[static_cast<size_t>(j)]);
    CHECK(small.ref_l2t_norm[static_cast<size_t>(j)] ==
          large.ref_l2t_norm[static_cast<size_t>(j)]);
    for (size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
      check_same_cell(small.cells[ai][static_cast<size_t>(j)],
                      large.cells[ai][static_cast<size_t>(j)]);
    }
  }
}

TEST_CASE("coupled runs share the path advertised by the checksum") {
  SweepConfig cfg = noisy_config(16, 0.04, 0.01);
  cfg.alphas = {0.3, 0.0};
  cfg.paths = 3;
  const SweepReport rep = run_sweep(cfg);
  for (int j = 0; j < cfg.paths; ++j) {
    const WienerPath path =
        sample_wiener(cfg.base.T, cfg.base.dt, cfg.base.noise.dimension(),
                      substream_seed(cfg.seed, j));
    CHECK(rep.path_checksums[static_cast<size_t>(j)] == path_checksum(path));
  }
}

TEST_CASE("report is identical for any worker count") {
  SweepConfig cfg = noisy_config(16, 0.05, 0.01);
  cfg.alphas = {0.25, 0.1, 0.0};
  cfg.paths = 4;
  cfg.deltas = {0.01, 0.03};
  const SweepReport serial = run_sweep(cfg, 1);
  const SweepReport pooled = run_sweep(cfg, 3);
  const SweepReport oversubscribed = run_sweep(cfg, 9);
  check_same_report(serial, pooled);
  check_same_report(serial, oversubscribed);
}

TEST_CASE("losing the reference excludes the path and fails the report") {
  SweepConfig cfg = tg_config(16, 1e-9, 20.0, 1.0);
  cfg.base.u0 = taylor_green(cfg.base.grid, 1e6);
  std::mt19937_64 rng(3);
  cfg.base.u0 += sgt::random_divfree(cfg.base.grid, rng, 2.0);
  cfg.base.u0 = leray_project(cfg.base.u0);
  cfg.base.u0.scale(1e6 / max_abs_coeff(cfg.base.u0));
  cfg.alphas = {0.125, 0.0};
  cfg.paths = 2;

  const SweepReport rep = run_sweep(cfg);
  CHECK(rep.excluded_cells == 4);
  for (size_t ai = 0; ai < 2; ++ai) {
    for (size_t j = 0; j < 2; ++j) {
      CHECK(rep.cells[ai][j].excluded);
      CHECK(rep.cells[ai][j].distance == 0.0);
    }
  }
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failure.empty());
  CHECK(rep.exceedance[0].empty());
}

TEST_CASE("mean distance and remainder shrink with alpha on a driven run") {
  SweepConfig cfg = noisy_config(16, 0.1, 0.01);
  cfg.alphas = {0.5, 0.25, 0.0};
  cfg.paths = 2;
  cfg.deltas = {0.01, 0.02};
  const SweepReport rep = run_sweep(cfg);

  CHECK(rep.ok);
  CHECK(rep.mean_distance[0] > rep.mean_distance[1]);
  CHECK(rep.mean_distance[1] > 0.0);
  CHECK(rep.mean_distance[2] == 0.0);
  CHECK(rep.remainder_moment[0] > rep.remainder_moment[1]);
  CHECK(rep.remainder_moment[1] > 0.0);
  CHECK(rep.remainder_moment[2] == 0.0);
  for (size_t ai = 0; ai < 3; ++ai) {
    CHECK(rep.sup_v_moment[ai] > 0.0);
    CHECK(rep.int_grad_moment[ai] > 0.0);
    CHECK(rep.mean_modulus[ai][0] > 0.0);
    CHECK(rep.mean_modulus[ai][0] <= rep.mean_modulus[ai][1]);
  }
}

}  // TEST_SUITE
