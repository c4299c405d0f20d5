#include "sgf/report_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "sgf/errors.hpp"

namespace sgf {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

void stamp(std::ofstream& out, uint64_t hash, uint64_t seed) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "# config_hash=%016" PRIx64 "\n# seed=%" PRIu64 "\n",
                hash, seed);
  out << buf;
}

std::string fit_line(const char* name, const RateFit& fit) {
  std::string s(name);
  if (fit.points == 0) return s + ": not fitted\n";
  s += ": slope=" + format_number(fit.slope);
  s += " stderr=" + format_number(fit.stderr_slope);
  s += " intercept=" + format_number(fit.intercept);
  s += " points=" + std::to_string(fit.points);
  return s + "\n";
}

void write_report_csv(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  const std::string path = dir + "/report.csv";
  std::ofstream out = open_out(path);
  stamp(out, hash, rep.seed);
  out << "alpha,path,distance,excluded\n";
  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    for (size_t j = 0; j < rep.cells[ai].size(); ++j) {
      const CellOutcome& cell = rep.cells[ai][j];
      out << format_number(rep.alphas[ai]) << ',' << j << ','
          << format_number(cell.distance) << ',' << (cell.excluded ? 1 : 0) << '\n';
    }
  }
  finish(out, path);
}

void write_moments_csv(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  const std::string path = dir + "/moments.csv";
  std::ofstream out = open_out(path);
  stamp(out, hash, rep.seed);
  out << "alpha,mean_distance,sup_v_moment,int_grad_moment\n";
  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    out << format_number(rep.alphas[ai]) << ',' << format_number(rep.mean_distance[ai])
        << ',' << format_number(rep.sup_v_moment[ai]) << ','
        << format_number(rep.int_grad_moment[ai]) << '\n';
  }
  finish(out, path);
}

void write_remainder_csv(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  const std::string path = dir + "/remainder.csv";
  std::ofstream out = open_out(path);
  stamp(out, hash, rep.seed);
  out << "alpha,remainder_moment\n";
  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    out << format_number(rep.alphas[ai]) << ','
        << format_number(rep.remainder_moment[ai]) << '\n';
  }
  finish(out, path);
}

void write_modulus_csv(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  const std::string path = dir + "/modulus.csv";
  std::ofstream out = open_out(path);
  stamp(out, hash, rep.seed);
  out << "alpha,delta,mean_modulus\n";
  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    for (size_t di = 0; di < rep.deltas.size(); ++di) {
      out << format_number(rep.alphas[ai]) << ',' << format_number(rep.deltas[di])
          << ',' << format_number(rep.mean_modulus[ai][di]) << '\n';
    }
  }
  finish(out, path);
}

void write_exceedance_csv(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  const std::string path = dir + "/exceedance.csv";
  std::ofstream out = open_out(path);
  stamp(out, hash, rep.seed);
  out << "alpha,epsilon,fraction,stderr\n";
  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    for (size_t ei = 0; ei < rep.exceedance[ai].size(); ++ei) {
      const ProbEstimate& est = rep.exceedance[ai][ei];
      out << format_number(rep.alphas[ai]) << ',' << format_number(rep.epsilons[ei])
          << ',' << format_number(est.fraction) << ','
          << format_number(est.stderr_fraction) << '\n';
    }
  }
  finish(out, path);
}

void write_summary(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  const std::string path = dir + "/summary.txt";
  std::ofstream out = open_out(path);
  stamp(out, hash, rep.seed);
  out << "paths: " << rep.paths << '\n';
  out << "alphas:";
  for (const double a : rep.alphas) out << ' ' << format_number(a);
  out << '\n';
  out << "excluded_cells: " << rep.excluded_cells << '\n';
  out << "status: " << (rep.ok ? "ok" : "FAILED: " + rep.failure) << '\n';
  out << fit_line("distance_rate", rep.distance_fit);
  out << fit_line("remainder_rate", rep.remainder_fit);
  for (size_t ai = 0; ai < rep.alphas.size(); ++ai) {
    const std::string name = "modulus_rate[alpha=" + format_number(rep.alphas[ai]) + "]";
    out << fit_line(name.c_str(), rep.modulus_fit[ai]);
  }
  char buf[64];
  for (size_t j = 0; j < rep.path_checksums.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "path_checksum[%zu]=%016" PRIx64 "\n", j,
                  rep.path_checksums[j]);
    out << buf;
  }
  for (size_t j = 0; j < rep.ref_l2t_norm.size(); ++j) {
    out << "reference_norm[" << j << "]=" << format_number(rep.ref_l2t_norm[j]) << '\n';
  }
  finish(out, path);
}

}  // namespace

void write_norms_csv(const std::string& path, const Trajectory& traj,
                     uint64_t hash, uint64_t seed) {
  std::ofstream out = open_out(path);
  stamp(out, hash, seed);
  out << "t,h_norm,grad_norm,v_norm,w_norm,remainder_h4\n";
  for (const NormRecord& r : traj.records) {
    out << format_number(r.t) << ',' << format_number(r.h) << ','
        << format_number(r.grad) << ',' << format_number(r.v) << ','
        << format_number(r.w) << ',' << format_number(r.r_h4) << '\n';
  }
  finish(out, path);
}

void write_sweep_files(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  write_report_csv(dir, rep, hash);
  write_moments_csv(dir, rep, hash);
  write_remainder_csv(dir, rep, hash);
  write_modulus_csv(dir, rep, hash);
  write_exceedance_csv(dir, rep, hash);
  write_summary(dir, rep, hash);
}

void write_ensemble_files(const std::string& dir, const SweepReport& rep, uint64_t hash) {
  write_moments_csv(dir, rep, hash);
  write_remainder_csv(dir, rep, hash);
  write_modulus_csv(dir, rep, hash);
  write_summary(dir, rep, hash);
}

}  // namespace sgf
