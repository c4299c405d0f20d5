#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgf/config.hpp"
#include "sgf/integrator.hpp"
#include "sgf/report_io.hpp"
#include "sgf/selftest.hpp"
#include "sgf/snapshot.hpp"
#include "sgf/wiener.hpp"

namespace {

// Exit codes: 0 success, 2 usage, 3 configuration, 4 runtime or failed
// checks, 5 file i/o.
enum ExitCode { kOk = 0, kUsage = 2, kConfig = 3, kRuntime = 4, kIo = 5 };

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw sgf::IoError("cannot create output directory " + dir + ": " + ec.message());
}

int print_checks(const std::vector<sgf::CheckResult>& results) {
  int failed = 0;
  for (const sgf::CheckResult& r : results) {
    std::printf("%-4s %s (%s)\n", r.pass ? "ok" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    failed += r.pass ? 0 : 1;
  }
  if (failed > 0) {
    std::fprintf(stderr, "%d of %zu checks failed\n", failed, results.size());
    return kRuntime;
  }
  std::printf("all %zu checks passed\n", results.size());
  return kOk;
}

int run_simulate(const sgf::RunConfig& cfg, uint64_t hash) {
  sgf::ModelParams p = sgf::model_params(cfg);
  const std::string dir = cfg.output.directory;
  ensure_dir(dir);

  sgf::Workspace ws(p.grid);
  const sgf::WienerPath path = sgf::sample_wiener(
      p.T, p.dt, p.noise.dimension(), sgf::substream_seed(cfg.seed, 0));

  sgf::SimulateOptions opts;
  opts.with_norms = true;
  opts.snapshot_stride = cfg.output.snapshot_stride;
  const sgf::Trajectory traj = sgf::simulate(p, path, ws, opts);

  sgf::write_norms_csv(dir + "/norms.csv", traj, hash, cfg.seed);
  if (traj.cfl_warning) {
    std::fprintf(stderr, "warning: advective step limit exceeded; results may be under-resolved\n");
  }
  char name[64];
  for (size_t s = 0; s < traj.snapshots.size(); ++s) {
    const size_t step = s * static_cast<size_t>(traj.snapshot_stride);
    std::snprintf(name, sizeof(name), "/fields_%06zu.bin", step);
    sgf::write_snapshot(dir + name, traj.snapshots[s], traj.times[step]);
  }
  std::printf("wrote %s/norms.csv (%zu records", dir.c_str(), traj.records.size());
  if (!traj.snapshots.empty()) {
    std::printf(", %zu field snapshots", traj.snapshots.size());
  }
  std::printf(")\n");
  return kOk;
}

int run_study(const sgf::RunConfig& cfg, uint64_t hash, int workers, bool full_report) {
  const sgf::SweepConfig sc = sgf::sweep_config(cfg);
  const sgf::SweepReport rep = sgf::run_sweep(sc, workers);

  const std::string dir = cfg.output.directory;
  ensure_dir(dir);
  if (full_report) {
    sgf::write_sweep_files(dir, rep, hash);
  } else {
    sgf::write_ensemble_files(dir, rep, hash);
  }

  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    std::printf("alpha=%-10g mean_distance=%-12g remainder=%-12g sup_moment=%g\n",
                rep.alphas[ai], rep.mean_distance[ai], rep.remainder_moment[ai],
                rep.sup_v_moment[ai]);
  }
  std::printf("wrote %s files into %s\n", full_report ? "sweep" : "ensemble", dir.c_str());
  if (!rep.ok) {
    std::fprintf(stderr, "study failed: %s\n", rep.failure.c_str());
    return kRuntime;
  }
  return kOk;
}

int run_diagnose_cmd(const sgf::RunConfig& cfg) {
  std::vector<double> alphas = cfg.alpha_list;
  if (alphas.empty()) alphas = {0.01, 0.5, 1.0};
  return print_checks(sgf::run_diagnose(cfg.grid, alphas, 100, cfg.seed));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral studies of stochastic second-grade and Navier-Stokes flows on the periodic square"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 1;
  uint64_t seed = 0;
  int dump_stride = 0;

  CLI::App* simulate = app.add_subcommand("simulate", "integrate one trajectory and write its norm table");
  CLI::App* sweep = app.add_subcommand("sweep", "coupled alpha sweep with full per-path report files");
  CLI::App* ensemble = app.add_subcommand("ensemble", "moment and modulus estimates only");
  CLI::App* diagnose = app.add_subcommand("diagnose", "operator identity battery on random fields");
  CLI::App* selftest = app.add_subcommand("selftest", "full behavioral check battery");

  for (CLI::App* sub : {simulate, sweep, ensemble, diagnose, selftest}) {
    sub->add_option("--config", config_path, "JSON run configuration file");
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
  }
  for (CLI::App* sub : {sweep, ensemble}) {
    sub->add_option("--workers", workers, "parallel path workers; never changes output bytes")
        ->check(CLI::PositiveNumber);
  }
  simulate->add_option("--dump-fields", dump_stride,
                       "write every k-th field as a binary snapshot")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  bool seed_given = false;
  for (CLI::App* sub : {simulate, sweep, ensemble, diagnose, selftest}) {
    seed_given = seed_given || sub->count("--seed") > 0;
  }

  sgf::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = sgf::load_config(config_path);
    if (seed_given) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output.directory = out_dir;
    if (simulate->count("--dump-fields") > 0) cfg.output.snapshot_stride = dump_stride;
  } catch (const sgf::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kConfig;
  } catch (const sgf::IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kIo;
  }
  const uint64_t hash = sgf::config_hash(cfg);

  try {
    if (app.got_subcommand(simulate)) return run_simulate(cfg, hash);
    if (app.got_subcommand(sweep)) return run_study(cfg, hash, workers, true);
    if (app.got_subcommand(ensemble)) return run_study(cfg, hash, workers, false);
    if (app.got_subcommand(diagnose)) return run_diagnose_cmd(cfg);
    if (app.got_subcommand(selftest)) {
      return print_checks(sgf::run_selftest(cfg.output.directory + "/selftest"));
    }
  } catch (const sgf::BlowupError& e) {
    std::fprintf(stderr, "integration blew up at t=%.17g: %s\n", e.t, e.what());
    return kRuntime;
  } catch (const sgf::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kConfig;
  } catch (const sgf::InvalidArgument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kConfig;
  } catch (const sgf::IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kIo;
  } catch (const sgf::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kRuntime;
  }
  return kUsage;
}
