#include "sgf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "sgf/diagnostics.hpp"
#include "sgf/errors.hpp"
#include "sgf/integrator.hpp"
#include "sgf/wiener.hpp"

namespace sgf {

void validate_sweep(const SweepConfig& cfg) {
  ModelParams q = cfg.base;
  q.alpha = 0.0;
  validate_params(q);

  if (cfg.alphas.empty()) throw InvalidArgument("alpha list must not be empty");
  int zeros = 0;
  for (const double a : cfg.alphas) {
    if (!(a >= 0.0)) throw InvalidArgument("alpha values must be >= 0");
    if (a == 0.0) ++zeros;
  }
  if (zeros != 1) throw InvalidArgument("alpha list must contain 0 exactly once");
  for (size_t i = 1; i < cfg.alphas.size(); ++i) {
    if (!(cfg.alphas[i] < cfg.alphas[i - 1])) {
      throw InvalidArgument("alpha list must be strictly descending");
    }
  }
  if (cfg.paths < 1) throw InvalidArgument("path count must be >= 1");
  for (const double e : cfg.epsilons) {
    if (!(e > 0.0)) throw InvalidArgument("probability thresholds must be > 0");
  }
  const int nsteps = step_count(cfg.base.T, cfg.base.dt);
  for (const double d : cfg.deltas) {
    const long m = std::llround(d / cfg.base.dt);
    if (m < 1 || m > nsteps ||
        std::abs(m * cfg.base.dt - d) > 1e-12 * std::max(1.0, d)) {
      throw InvalidArgument("modulus lags must be multiples of dt inside (0, T]");
    }
  }
}

RateFit fit_rate(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("sample size mismatch");
  const int n = static_cast<int>(xs.size());
  if (n < 3) throw InvalidArgument("rate fit needs at least 3 points");
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw InvalidArgument("log-log fit needs positive data");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("rate fit needs distinct x values");

  RateFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - fit.intercept - fit.slope * lx[i];
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
  return fit;
}

ProbEstimate estimate_probability(std::span<const double> distances, double epsilon) {
  if (distances.empty()) throw InvalidArgument("empty ensemble");
  if (!(epsilon > 0.0)) throw InvalidArgument("threshold must be > 0");
  int count = 0;
  for (const double d : distances) {
    if (d > epsilon) ++count;
  }
  ProbEstimate est;
  const double m = static_cast<double>(distances.size());
  est.fraction = count / m;
  est.stderr_fraction = std::sqrt(est.fraction * (1.0 - est.fraction) / m);
  return est;
}

namespace {

struct PathData {
  std::vector<CellOutcome> cells;  // per alpha
  uint64_t checksum = 0;
  double ref_norm = 0.0;
};

PathData run_path(const SweepConfig& cfg, int j, Workspace& ws) {
  PathData out;
  out.cells.resize(cfg.alphas.size());

  const WienerPath path =
      sample_wiener(cfg.base.T, cfg.base.dt, cfg.base.noise.dimension(),
                    substream_seed(cfg.seed, j));
  out.checksum = path_checksum(path);

  // The reference trajectory keeps every state: each alpha run compares
  // against it time point by time point.
  SimulateOptions ref_opts;
  ref_opts.with_norms = true;
  ref_opts.snapshot_stride = 1;

  ModelParams pref = cfg.base;
  pref.alpha = 0.0;
  Trajectory vtraj;
  try {
    vtraj = simulate(pref, path, ws, ref_opts);
  } catch (const BlowupError&) {
    // No reference: nothing on this path can be compared.
    for (CellOutcome& c : out.cells) c.excluded = true;
    return out;
  }

  const double dt = cfg.base.dt;
  {
    double acc = 0.0;
    for (int i = 0; i < vtraj.steps(); ++i) {
      acc += vtraj.records[static_cast<size_t>(i)].h *
             vtraj.records[static_cast<size_t>(i)].h * dt;
    }
    out.ref_norm = std::sqrt(acc);
  }

  for (size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
    const double alpha = cfg.alphas[ai];
    CellOutcome& cell = out.cells[ai];

    Trajectory own;
    if (alpha != 0.0) {
      ModelParams p = cfg.base;
      p.alpha = alpha;
      // The alpha trajectory is only stored when increment moduli are
      // requested; the distance accumulates state by state, in the same
      // order and with the same terms as l2t_h_distance.
      SimulateOptions opts;
      opts.with_norms = true;
      opts.snapshot_stride = cfg.deltas.empty() ? 0 : 1;
      double dist_acc = 0.0;
      const int last = static_cast<int>(vtraj.times.size()) - 1;
      const std::vector<StepObserver> watch = {
          [&dist_acc, &vtraj, last](int index, double, const SpectralVectorField& u) {
            if (index < last) {
              dist_acc += h_distance_sq(u, vtraj.snapshots[static_cast<size_t>(index)]);
            }
          }};
      try {
        own = simulate(p, path, ws, opts, watch);
      } catch (const BlowupError&) {
        cell.excluded = true;
        continue;
      }
      cell.distance = std::sqrt(dt * dist_acc);
    }
    const Trajectory& traj = alpha == 0.0 ? vtraj : own;
    double sup = 0.0, igrad = 0.0, rem = 0.0;
    for (int i = 0; i <= traj.steps(); ++i) {
      const NormRecord& r = traj.records[static_cast<size_t>(i)];
      sup = std::max(sup, r.v * r.v);
      if (i < traj.steps()) {
        igrad += r.grad * r.grad * dt;
        rem += r.r_h4 * r.r_h4 * dt;
      }
    }
    cell.sup_v_sq = sup;
    cell.int_grad_sq = igrad;
    cell.remainder_l2t = std::sqrt(rem);
    cell.modulus.reserve(cfg.deltas.size());
    for (const double delta : cfg.deltas) {
      cell.modulus.push_back(increment_modulus(traj, delta));
    }
  }
  return out;
}

// Fit y(x) over the pairs with positive values; not fittable -> points 0.
RateFit fit_positive(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> fx, fy;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 0.0 && ys[i] > 0.0) {
      fx.push_back(xs[i]);
      fy.push_back(ys[i]);
    }
  }
  if (fx.size() < 3) return {};
  bool distinct = false;
  for (size_t i = 1; i < fx.size(); ++i) distinct = distinct || fx[i] != fx[0];
  if (!distinct) return {};
  return fit_rate(fx, fy);
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg, int workers) {
  validate_sweep(cfg);
  if (workers < 1) throw InvalidArgument("worker count must be >= 1");

  const int npaths = cfg.paths;
  const size_t nalpha = cfg.alphas.size();

  std::vector<PathData> results(static_cast<size_t>(npaths));
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&]() {
    Workspace ws(cfg.base.grid);
    while (true) {
      const int j = next.fetch_add(1);
      if (j >= npaths) break;
      try {
        results[static_cast<size_t>(j)] = run_path(cfg, j, ws);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        break;
      }
    }
  };

  const int nworkers = std::min(workers, npaths);
  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepReport rep;
  rep.alphas = cfg.alphas;
  rep.paths = npaths;
  rep.seed = cfg.seed;
  rep.epsilons = cfg.epsilons;
  rep.deltas = cfg.deltas;

  rep.cells.assign(nalpha, {});
  rep.path_checksums.resize(static_cast<size_t>(npaths));
  rep.ref_l2t_norm.resize(static_cast<size_t>(npaths));
  for (int j = 0; j < npaths; ++j) {
    rep.path_checksums[static_cast<size_t>(j)] = results[static_cast<size_t>(j)].checksum;
    rep.ref_l2t_norm[static_cast<size_t>(j)] = results[static_cast<size_t>(j)].ref_norm;
  }
  for (size_t ai = 0; ai < nalpha; ++ai) {
    rep.cells[ai].resize(static_cast<size_t>(npaths));
    for (int j = 0; j < npaths; ++j) {
      rep.cells[ai][static_cast<size_t>(j)] =
          std::move(results[static_cast<size_t>(j)].cells[ai]);
    }
  }

  rep.mean_distance.assign(nalpha, 0.0);
  rep.sup_v_moment.assign(nalpha, 0.0);
  rep.int_grad_moment.assign(nalpha, 0.0);
  rep.remainder_moment.assign(nalpha, 0.0);
  rep.mean_modulus.assign(nalpha, std::vector<double>(cfg.deltas.size(), 0.0));
  rep.exceedance.assign(nalpha, {});

  bool empty_alpha = false;
  for (size_t ai = 0; ai < nalpha; ++ai) {
    int included = 0;
    std::vector<double> relative;  // distance / reference size, per included path
    for (int j = 0; j < npaths; ++j) {
      const CellOutcome& cell = rep.cells[ai][static_cast<size_t>(j)];
      if (cell.excluded) {
        ++rep.excluded_cells;
        continue;
      }
      ++included;
      rep.mean_distance[ai] += cell.distance;
      rep.sup_v_moment[ai] += cell.sup_v_sq;
      rep.int_grad_moment[ai] += cell.int_grad_sq;
      rep.remainder_moment[ai] += cell.remainder_l2t;
      for (size_t di = 0; di < cfg.deltas.size(); ++di) {
        rep.mean_modulus[ai][di] += cell.modulus[di];
      }
      const double ref = rep.ref_l2t_norm[static_cast<size_t>(j)];
      if (ref > 0.0) {
        relative.push_back(cell.distance / ref);
      } else {
        relative.push_back(cell.distance > 0.0
                               ? std::numeric_limits<double>::infinity()
                               : 0.0);
      }
    }
    if (included == 0) {
      empty_alpha = true;
      continue;
    }
    rep.mean_distance[ai] /= included;
    rep.sup_v_moment[ai] /= included;
    rep.int_grad_moment[ai] /= included;
    rep.remainder_moment[ai] /= included;
    for (size_t di = 0; di < cfg.deltas.size(); ++di) {
      rep.mean_modulus[ai][di] /= included;
    }
    for (const double eps : cfg.epsilons) {
      rep.exceedance[ai].push_back(estimate_probability(relative, eps));
    }
  }

  {
    std::vector<double> pos_alpha, pos_dist, pos_rem;
    for (size_t ai = 0; ai < nalpha; ++ai) {
      if (cfg.alphas[ai] > 0.0) {
        pos_alpha.push_back(cfg.alphas[ai]);
        pos_dist.push_back(rep.mean_distance[ai]);
        pos_rem.push_back(rep.remainder_moment[ai]);
      }
    }
    rep.distance_fit = fit_positive(pos_alpha, pos_dist);
    rep.remainder_fit = fit_positive(pos_alpha, pos_rem);
    rep.modulus_fit.resize(nalpha);
    for (size_t ai = 0; ai < nalpha; ++ai) {
      rep.modulus_fit[ai] = fit_positive(cfg.deltas, rep.mean_modulus[ai]);
    }
  }

  const int total = static_cast<int>(nalpha) * npaths;
  if (rep.excluded_cells * 20 > total) {
    rep.ok = false;
    rep.failure = "more than 5% of runs blew up (" +
                  std::to_string(rep.excluded_cells) + " of " +
                  std::to_string(total) + ")";
  } else if (empty_alpha) {
    rep.ok = false;
    rep.failure = "an alpha level lost every path to blow-ups";
  }
  return rep;
}

}  // namespace sgf
