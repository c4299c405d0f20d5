#include "sgf/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "sgf/operators.hpp"

// The format is documented as little-endian; this implementation writes
// native doubles and integers directly.
static_assert(std::endian::native == std::endian::little,
              "snapshot i/o assumes a little-endian host");

namespace sgf {

namespace {

constexpr char kMagic[16] = {'s', 'g', 'f', 'l', 'u', 'i', 'd', '-',
                             's', 'p', 'e', 'c', 't', 'r', 'a', 'l'};

}  // namespace

void write_snapshot(const std::string& path, const SpectralVectorField& u, double time) {
  if (u.grid().n == 0) throw InvalidArgument("cannot snapshot a default-constructed field");
  if (!std::isfinite(time)) throw InvalidArgument("snapshot time must be finite");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open snapshot file for writing: " + path);

  const uint64_t n = static_cast<uint64_t>(u.grid().n);
  const uint64_t ncomp = 2;
  const double length = u.grid().length;
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(&length), sizeof(length));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&ncomp), sizeof(ncomp));
  out.write(reinterpret_cast<const char*>(&time), sizeof(time));

  const auto c0 = u.component(0);
  const auto c1 = u.component(1);
  std::vector<double> buf;
  buf.reserve(4 * c0.size());
  for (size_t m = 0; m < c0.size(); ++m) {
    buf.push_back(c0[m].real());
    buf.push_back(c0[m].imag());
    buf.push_back(c1[m].real());
    buf.push_back(c1[m].imag());
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
  out.flush();
  if (!out) throw IoError("failed writing snapshot file: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot file: " + path);

  char magic[16];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("not a spectral snapshot file: " + path);
  }

  double length = 0.0, time = 0.0;
  uint64_t n = 0, ncomp = 0;
  in.read(reinterpret_cast<char*>(&length), sizeof(length));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&ncomp), sizeof(ncomp));
  in.read(reinterpret_cast<char*>(&time), sizeof(time));
  if (!in) throw IoError("truncated snapshot header: " + path);
  if (ncomp != 2) throw IoError("unsupported component count in snapshot: " + path);
  if (!(length > 0.0) || !std::isfinite(length) || !std::isfinite(time) ||
      n < 8 || n % 2 != 0 || n > (1u << 16)) {
    throw IoError("corrupt snapshot header: " + path);
  }

  Snapshot snap;
  snap.time = time;
  snap.field = SpectralVectorField(TorusGrid(length, static_cast<int>(n)));

  const size_t modes = static_cast<size_t>(n) * static_cast<size_t>(n);
  std::vector<double> buf(4 * modes);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (!in || static_cast<size_t>(in.gcount()) != buf.size() * sizeof(double)) {
    throw IoError("truncated snapshot payload: " + path);
  }
  in.peek();
  if (!in.eof()) throw IoError("trailing bytes after snapshot payload: " + path);

  const auto c0 = snap.field.component(0);
  const auto c1 = snap.field.component(1);
  for (size_t m = 0; m < modes; ++m) {
    c0[m] = Complex{buf[4 * m + 0], buf[4 * m + 1]};
    c1[m] = Complex{buf[4 * m + 2], buf[4 * m + 3]};
  }
  const double scale = max_abs_coeff(snap.field);
  snap.field.set_divergence_free(max_divergence(snap.field) <= 1e-12 * scale);
  return snap;
}

}  // namespace sgf
