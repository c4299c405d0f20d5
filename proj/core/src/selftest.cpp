#include "sgf/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sgf/config.hpp"
#include "sgf/diagnostics.hpp"
#include "sgf/integrator.hpp"
#include "sgf/nonlinear.hpp"
#include "sgf/operators.hpp"
#include "sgf/report_io.hpp"
#include "sgf/rng.hpp"
#include "sgf/snapshot.hpp"
#include "sgf/transform.hpp"
#include "sgf/wiener.hpp"

namespace sgf {

namespace {

const double kPi = std::numbers::pi;

SpectralVectorField random_field(const TorusGrid& g, uint64_t seed) {
  SpectralVectorField u(g);
  uint64_t ctr = 0;
  for (int c = 0; c < 2; ++c) {
    for (int i1 = 0; i1 < g.n; ++i1) {
      for (int i2 = 0; i2 < g.n; ++i2) {
        const double re = counter_normal(seed, ctr++, 0);
        const double im = counter_normal(seed, ctr++, 0);
        const double j1 = g.freq(i1);
        const double j2 = g.freq(i2);
        const double w = std::exp(-0.15 * (j1 * j1 + j2 * j2));
        u.at(c, i1, i2) = w * Complex{re, im};
      }
    }
  }
  u.symmetrize();
  u.zero_mean_mode();
  return u;
}

SpectralVectorField random_divfree(const TorusGrid& g, uint64_t seed) {
  return leray_project(random_field(g, seed));
}

// Worst |a - b| coefficient relative to the size of b.
double field_dev(const SpectralVectorField& a, const SpectralVectorField& b) {
  SpectralVectorField d = a;
  d -= b;
  return max_abs_coeff(d) / std::max(max_abs_coeff(b), 1e-300);
}

CheckResult bounded(const std::string& name, double worst, double bound) {
  CheckResult r;
  r.name = name;
  r.pass = worst <= bound;
  r.detail = "worst " + format_number(worst) + ", bound " + format_number(bound);
  return r;
}

CheckResult verdict(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

CheckResult check_transform_round_trip(const TorusGrid& g, Workspace& ws, int fields,
                                       uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = random_field(g, seed + f);
    worst = std::max(worst, field_dev(ws.to_spectral(ws.to_physical(u)), u));
  }
  return bounded("transform round trip", worst, 1e-13);
}

CheckResult check_parseval(const TorusGrid& g, Workspace& ws, int fields, uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = random_field(g, seed + f);
    const PhysicalVectorField p = ws.to_physical(u);
    double quad = 0.0;
    for (int c = 0; c < 2; ++c) {
      for (const double s : p.component(c)) quad += s * s;
    }
    quad *= g.cell_area();
    const double modal = sobolev_norm(u, 0.0) * sobolev_norm(u, 0.0);
    worst = std::max(worst, std::abs(quad - modal) / modal);
  }
  return bounded("lattice quadrature matches the spectral sum", worst, 1e-12);
}

CheckResult check_projection(const TorusGrid& g, int fields, uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = random_field(g, seed + f);
    const SpectralVectorField w = random_field(g, seed + 1000 + f);
    const SpectralVectorField pu = leray_project(u);
    worst = std::max(worst, max_divergence(pu) / std::max(max_abs_coeff(pu), 1e-300));
    worst = std::max(worst, field_dev(leray_project(pu), pu));
    const double lhs = h_inner(pu, w);
    const double rhs = h_inner(u, leray_project(w));
    const double scale = std::max(sobolev_norm(u, 0.0) * sobolev_norm(w, 0.0), 1e-300);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return bounded("divergence-free projection idempotent, exact, self-adjoint", worst,
                 1e-12);
}

CheckResult check_filter_inverse(const TorusGrid& g, std::span<const double> alphas,
                                 int fields, uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = random_divfree(g, seed + f);
    for (const double alpha : alphas) {
      worst = std::max(worst,
                       field_dev(inverse_helmholtz(helmholtz_apply(u, alpha), alpha), u));
      const SpectralVectorField a = inverse_helmholtz(leray_project(u), alpha);
      const SpectralVectorField b = leray_project(inverse_helmholtz(u, alpha));
      worst = std::max(worst, field_dev(a, b));
    }
  }
  return bounded("filter inverse identity and projection commutation", worst, 1e-12);
}

CheckResult check_equivalence_window(const TorusGrid& g, std::span<const double> alphas,
                                     int fields, uint64_t seed) {
  double worst = 0.0;  // signed slack: positive means violated
  const double pc = g.poincare_constant();
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = random_divfree(g, seed + f);
    const double hsq = sobolev_norm(u, 0.0) * sobolev_norm(u, 0.0);
    const double gsq = sobolev_norm(u, 1.0) * sobolev_norm(u, 1.0);
    for (const double alpha : alphas) {
      const double vsq = hsq + alpha * gsq;
      worst = std::max(worst, alpha * gsq / vsq - 1.0);
      worst = std::max(worst, vsq / ((pc + alpha) * gsq) - 1.0);
    }
  }
  return bounded("energy norm equivalence window", worst, 1e-12);
}

CheckResult check_filter_monotone(const TorusGrid& g, std::span<const double> alphas,
                                  int fields, uint64_t seed) {
  bool ok = true;
  double margin = 1e300;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = random_divfree(g, seed + f);
    for (const double alpha : alphas) {
      if (!(alpha > 0.0)) continue;
      const SpectralVectorField fu = helmholtz_apply(u, alpha);
      for (const double beta : {-4.0, 0.0, 1.0}) {
        const double lo = sobolev_norm(u, beta);
        const double hi = sobolev_norm(fu, beta);
        ok = ok && lo < hi;
        margin = std::min(margin, hi / std::max(lo, 1e-300) - 1.0);
      }
    }
  }
  return verdict("filtering strictly inflates every scale of norm", ok,
                 "smallest gain " + format_number(margin));
}

CheckResult check_dealias(const TorusGrid& g, int fields, uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField d = dealias(random_field(g, seed + f));
    SpectralVectorField dd = dealias(d);
    dd -= d;
    worst = std::max(worst, max_abs_coeff(dd));
  }
  SpectralVectorField masked(g);
  const int j = g.n / 3 + 1;  // outside the two-thirds band
  masked.at(0, g.row_of(j), 0) = Complex{1.0, 0.0};
  masked.at(0, g.row_of(-j), 0) = Complex{1.0, 0.0};
  worst = std::max(worst, max_abs_coeff(dealias(masked)));
  return bounded("two-thirds mask idempotent and complete", worst, 0.0);
}

CheckResult check_orthogonality(const TorusGrid& g, Workspace& ws,
                                std::span<const double> alphas, int fields,
                                uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = dealias(random_divfree(g, seed + f));
    const SpectralVectorField a = advection(u, ws);
    worst = std::max(worst,
                     std::abs(h_inner(a, u)) /
                         std::max(sobolev_norm(a, 0.0) * sobolev_norm(u, 0.0), 1e-30));
    for (const double alpha : alphas) {
      const SpectralVectorField b = curl_cross(u, alpha, ws);
      worst = std::max(worst,
                       std::abs(h_inner(b, u)) /
                           std::max(sobolev_norm(b, 0.0) * sobolev_norm(u, 0.0), 1e-30));
    }
  }
  return bounded("nonlinearity does no work on the velocity", worst, 1e-10);
}

CheckResult check_remainder_linear(const TorusGrid& g, Workspace& ws,
                                   std::span<const double> alphas, int fields,
                                   uint64_t seed) {
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    const SpectralVectorField u = dealias(random_divfree(g, seed + f));
    for (const double alpha : alphas) {
      if (!(alpha > 0.0)) continue;
      SpectralVectorField r2 = remainder(u, 2.0 * alpha, ws);
      r2.axpy(-2.0, remainder(u, alpha, ws));
      worst = std::max(worst, max_abs_coeff(r2));
    }
  }
  return bounded("commutator term scales exactly with the stress modulus", worst, 0.0);
}

// ---- behavioral checks beyond the operator identities ----

WienerPath no_noise_path(double T, double dt) { return sample_wiener(T, dt, 0, 1); }

CheckResult check_viscous_decay(uint64_t /*seed*/) {
  const TorusGrid g(2.0 * kPi, 32);
  Workspace ws(g);
  double worst = 0.0;
  for (const double alpha : {0.0, 1.0}) {
    ModelParams p;
    p.grid = g;
    p.alpha = alpha;
    p.nu = 0.1;
    p.T = 0.5;
    p.dt = 1e-3;
    p.u0 = taylor_green(g, 1.0);
    const Trajectory traj = simulate(p, no_noise_path(p.T, p.dt), ws);
    const double measured =
        -std::log(traj.records.back().h / traj.records.front().h) / p.T;
    const double target = 2.0 * p.nu / (1.0 + 2.0 * alpha);
    worst = std::max(worst, std::abs(measured - target) / target);
  }
  return bounded("single-mode viscous decay rate", worst, 0.01);
}

CheckResult check_temporal_order(uint64_t /*seed*/) {
  ModelParams p;
  p.grid = TorusGrid(2.0 * kPi, 16);
  p.alpha = 0.3;
  p.nu = 0.1;
  p.T = 0.1;
  p.u0 = taylor_green(p.grid, 1.0);
  p.forcing.entries.push_back({{1, 0, Complex{}, Complex{0.5, 0.0}}, Modulation::constant()});
  Workspace ws(p.grid);

  SimulateOptions opts;
  opts.with_norms = false;
  opts.snapshot_stride = 0;
  // Reference 16x below the finest level keeps the common-constant bias
  // (dt_i - dt_ref) factors near the ideal halving ratio.
  std::vector<SpectralVectorField> finals;
  for (const double dt : {4e-3, 2e-3, 1e-3, 6.25e-5}) {
    ModelParams q = p;
    q.dt = dt;
    SpectralVectorField last;
    const std::vector<StepObserver> keep = {
        [&](int, double, const SpectralVectorField& u) { last = u; }};
    simulate(q, no_noise_path(q.T, q.dt), ws, opts, keep);
    finals.push_back(std::move(last));
  }
  std::vector<double> err;
  for (int level = 0; level < 3; ++level) {
    SpectralVectorField d = finals[level];
    d -= finals[3];
    err.push_back(sobolev_norm(d, 0.0));
  }
  const double r0 = err[0] / err[1];
  const double r1 = err[1] / err[2];
  const bool ok = r0 >= 1.7 && r0 <= 2.3 && r1 >= 1.7 && r1 <= 2.3;
  return verdict("error halves with the time step", ok,
                 "ratios " + format_number(r0) + ", " + format_number(r1));
}

CheckResult check_noise_statistics(uint64_t seed) {
  const double T = 10.0, dt = 1e-3;
  const WienerPath path = sample_wiener(T, dt, 1, seed);
  const int n = path.steps();
  double mean = 0.0;
  for (const double x : path.increments) mean += x;
  mean /= n;
  double var = 0.0;
  for (const double x : path.increments) var += (x - mean) * (x - mean);
  var /= (n - 1);
  const double mean_tol = 4.0 * std::sqrt(dt / n);
  const double var_tol = 4.0 * dt * std::sqrt(2.0 / (n - 1));
  const bool ok = std::abs(mean) <= mean_tol && std::abs(var - dt) <= var_tol;
  return verdict("increment mean and variance within sampling error", ok,
                 "mean " + format_number(mean) + " (tol " + format_number(mean_tol) +
                     "), var-dt " + format_number(var - dt) + " (tol " +
                     format_number(var_tol) + ")");
}

CheckResult check_ito_isometry(uint64_t seed) {
  const double T = 0.25, dt = 1e-2;
  const int paths = 512;
  const int nsteps = step_count(T, dt);
  const auto g = [](double t) { return 0.3 * std::cos(2.0 * kPi * t / 0.4); };
  double truth = 0.0;
  for (int i = 0; i < nsteps; ++i) truth += g(i * dt) * g(i * dt) * dt;

  double mean = 0.0, m2 = 0.0;
  for (int p = 0; p < paths; ++p) {
    const WienerPath path = sample_wiener(T, dt, 1, substream_seed(seed, p));
    double x = 0.0;
    for (int i = 0; i < nsteps; ++i) x += g(i * dt) * path.increment(i)[0];
    const double v = x * x;
    const double d = v - mean;
    mean += d / (p + 1);
    m2 += d * (v - mean);
  }
  const double stderr_mean = std::sqrt(m2 / (paths - 1) / paths);
  const bool ok = std::abs(mean - truth) <= 3.0 * stderr_mean + 1e-12;
  return verdict("stochastic integral variance matches its time integral", ok,
                 "estimate " + format_number(mean) + ", target " + format_number(truth) +
                     ", stderr " + format_number(stderr_mean));
}

CheckResult check_substreams(uint64_t seed) {
  const uint64_t a = path_checksum(sample_wiener(0.5, 1e-2, 2, substream_seed(seed, 0)));
  const uint64_t b = path_checksum(sample_wiener(0.5, 1e-2, 2, substream_seed(seed, 0)));
  const uint64_t c = path_checksum(sample_wiener(0.5, 1e-2, 2, substream_seed(seed, 1)));
  const bool ok = a == b && a != c;
  return verdict("path substreams reproducible and distinct", ok,
                 "repeat match: " + std::string(a == b ? "yes" : "no") +
                     ", neighbor differs: " + std::string(a != c ? "yes" : "no"));
}

CheckResult check_sweep_closed_form() {
  SweepConfig cfg;
  cfg.base.grid = TorusGrid(2.0 * kPi, 16);
  cfg.base.nu = 0.05;
  cfg.base.T = 0.1;
  cfg.base.dt = 0.01;
  cfg.base.u0 = taylor_green(cfg.base.grid, 1.0);
  cfg.alphas = {0.5, 0.0};
  cfg.paths = 1;
  cfg.epsilons = {0.1};
  const SweepReport rep = run_sweep(cfg);

  const double hn = sobolev_norm(cfg.base.u0, 0.0);
  const auto rho = [&](double alpha) {
    return 1.0 / (1.0 + cfg.base.dt * cfg.base.nu * 2.0 / (1.0 + 2.0 * alpha));
  };
  double acc = 0.0, ra = 1.0, r0 = 1.0;
  for (int i = 0; i < step_count(cfg.base.T, cfg.base.dt); ++i) {
    acc += cfg.base.dt * hn * hn * (ra - r0) * (ra - r0);
    ra *= rho(0.5);
    r0 *= rho(0.0);
  }
  const double expected = std::sqrt(acc);
  const double dev = std::abs(rep.cells[0][0].distance - expected) / expected;
  const bool ok = dev <= 1e-9 && rep.cells[1][0].distance == 0.0 && rep.ok;
  return verdict("coupled sweep reproduces the closed-form separation", ok,
                 "relative deviation " + format_number(dev));
}

CheckResult check_config_round_trip() {
  const RunConfig def;
  const std::string canon = canonical_config(def);
  const RunConfig back = parse_config(canon);
  bool ok = canonical_config(back) == canon;

  const RunConfig minimal = parse_config("{}");
  ok = ok && canonical_config(minimal) == canon;
  ok = ok && minimal.grid.n == 64 && minimal.dt == 1e-3 && minimal.T == 1.0 &&
       std::abs(minimal.grid.length - 2.0 * kPi) < 1e-15 && minimal.paths == 32;

  const auto rejects = [](const std::string& text, const std::string& marker) {
    try {
      parse_config(text);
      return false;
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(marker) != std::string::npos;
    }
  };
  ok = ok && rejects(R"({"physics": {"nuu": 1}})", "unknown key");
  ok = ok && rejects(R"({"physics": {"nu": 0}})", "viscosity");
  ok = ok && rejects(R"({"grid": {"n": 33}})", "even");
  ok = ok && rejects(R"({"physics": {"alpha": -1}})", "alpha must be >= 0");
  ok = ok && rejects("{\n  \"grid\": 5,\n}", "line");

  const uint64_t h1 = config_hash(def);
  RunConfig reseeded = def;
  reseeded.seed = def.seed + 1;
  ok = ok && h1 == config_hash(back) && h1 != config_hash(reseeded);
  return verdict("config parses, canonicalizes, and hashes stably", ok,
                 "canonical form " + std::to_string(canon.size()) + " bytes");
}

CheckResult check_snapshot_round_trip(const std::string& scratch) {
  const TorusGrid g(2.0 * kPi, 16);
  const SpectralVectorField u = random_divfree(g, 404);
  const std::string path = scratch + "/roundtrip.snap";
  write_snapshot(path, u, 0.625);
  const Snapshot snap = read_snapshot(path);

  bool ok = snap.time == 0.625 && snap.field.grid() == g && snap.field.divergence_free();
  ok = ok && snap.field.raw().size() == u.raw().size() &&
       std::memcmp(snap.field.raw().data(), u.raw().data(),
                   u.raw().size() * sizeof(Complex)) == 0;

  bool rejected = false;
  try {
    read_snapshot(scratch + "/missing.snap");
  } catch (const IoError&) {
    rejected = true;
  }
  return verdict("field snapshots round trip bit for bit", ok && rejected,
                 ok ? "payload identical" : "payload differs");
}

CheckResult check_csv_determinism(const std::string& scratch) {
  ModelParams p;
  p.grid = TorusGrid(2.0 * kPi, 16);
  p.alpha = 0.2;
  p.nu = 0.1;
  p.T = 0.02;
  p.dt = 0.01;
  p.u0 = taylor_green(p.grid, 1.0);
  Workspace ws(p.grid);
  const Trajectory traj = simulate(p, no_noise_path(p.T, p.dt), ws);

  const auto emit = [&](const std::string& name) {
    write_norms_csv(name, traj, 0x1234abcdu, 7);
    std::ifstream in(name, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string a = emit(scratch + "/norms_a.csv");
  const std::string b = emit(scratch + "/norms_b.csv");
  const bool ok = !a.empty() && a == b && a.find("# config_hash=") == 0 &&
                  a.find("t,h_norm") != std::string::npos;
  return verdict("norm table emission is byte stable", ok,
                 std::to_string(a.size()) + " bytes per file");
}

}  // namespace

std::vector<CheckResult> run_diagnose(const TorusGrid& grid,
                                      std::span<const double> alphas, int fields,
                                      uint64_t seed) {
  if (fields < 1) throw InvalidArgument("diagnose needs at least one field");
  for (const double a : alphas) {
    if (!(a >= 0.0)) throw InvalidArgument("diagnose alphas must be >= 0");
  }
  Workspace ws(grid);
  std::vector<CheckResult> out;
  out.push_back(check_transform_round_trip(grid, ws, fields, seed));
  out.push_back(check_parseval(grid, ws, fields, seed + 11));
  out.push_back(check_projection(grid, fields, seed + 22));
  out.push_back(check_filter_inverse(grid, alphas, fields, seed + 33));
  out.push_back(check_equivalence_window(grid, alphas, fields, seed + 44));
  out.push_back(check_filter_monotone(grid, alphas, fields, seed + 55));
  out.push_back(check_dealias(grid, fields, seed + 66));
  out.push_back(check_orthogonality(grid, ws, alphas, fields, seed + 77));
  out.push_back(check_remainder_linear(grid, ws, alphas, fields, seed + 88));
  return out;
}

std::vector<CheckResult> run_selftest(const std::string& scratch_dir) {
  std::error_code ec;
  std::filesystem::create_directories(scratch_dir, ec);
  if (ec) throw IoError("cannot create scratch directory " + scratch_dir + ": " + ec.message());

  const std::vector<double> alphas = {0.01, 0.5, 1.0};
  std::vector<CheckResult> out = run_diagnose(TorusGrid(2.0 * kPi, 32), alphas, 8, 101);
  out.push_back(check_viscous_decay(0));
  out.push_back(check_temporal_order(0));
  out.push_back(check_noise_statistics(77));
  out.push_back(check_ito_isometry(909));
  out.push_back(check_substreams(2026));
  out.push_back(check_sweep_closed_form());
  out.push_back(check_config_round_trip());
  out.push_back(check_snapshot_round_trip(scratch_dir));
  out.push_back(check_csv_determinism(scratch_dir));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace sgf
