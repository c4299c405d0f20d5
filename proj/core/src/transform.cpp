#include "sgf/transform.hpp"

#include <mutex>

namespace sgf {

namespace {
// FFTW's planner mutates global state; executes are safe on distinct plans.
std::mutex g_planner_mutex;
}  // namespace

Workspace::Workspace(const TorusGrid& grid) : grid_(grid) {
  const int n = grid_.n;
  buf_ = static_cast<Complex*>(fftw_malloc(sizeof(Complex) * grid_.modes()));
  if (!buf_) throw Error("fftw_malloc failed");
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  fwd_ = fftw_plan_dft_2d(n, n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_2d(n, n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw Error("fftw plan creation failed");
}

Workspace::~Workspace() {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
  if (buf_) fftw_free(buf_);
}

PhysicalVectorField Workspace::to_physical(const SpectralVectorField& u) {
  if (!(u.grid() == grid_)) throw InvalidArgument("workspace grid mismatch");
  const int m = grid_.modes();
  const auto c0 = u.component(0);
  const auto c1 = u.component(1);
  // Both components ride one complex transform: for conjugate-symmetric
  // inputs the inverse of c0 + i*c1 has c0's samples in the real part and
  // c1's in the imaginary part.
  for (int i = 0; i < m; ++i) {
    buf_[i] = Complex{c0[i].real() - c1[i].imag(), c0[i].imag() + c1[i].real()};
  }
  fftw_execute(bwd_);
  PhysicalVectorField out(grid_);
  auto f0 = out.component(0);
  auto f1 = out.component(1);
  for (int i = 0; i < m; ++i) {
    f0[i] = buf_[i].real();
    f1[i] = buf_[i].imag();
  }
  return out;
}

SpectralVectorField Workspace::to_spectral(const PhysicalVectorField& u) {
  if (!(u.grid() == grid_)) throw InvalidArgument("workspace grid mismatch");
  const int n = grid_.n;
  const int m = grid_.modes();
  const auto f0 = u.component(0);
  const auto f1 = u.component(1);
  for (int i = 0; i < m; ++i) buf_[i] = Complex{f0[i], f1[i]};
  fftw_execute(fwd_);
  SpectralVectorField out(grid_);
  auto c0 = out.component(0);
  auto c1 = out.component(1);
  const double s = 0.5 / m;
  for (int i1 = 0; i1 < n; ++i1) {
    const int p1 = grid_.conj_row(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int p2 = grid_.conj_row(i2);
      const Complex a = buf_[static_cast<size_t>(i1) * n + i2];
      const Complex b = std::conj(buf_[static_cast<size_t>(p1) * n + p2]);
      const size_t idx = static_cast<size_t>(i1) * n + i2;
      c0[idx] = s * (a + b);
      const Complex d = a - b;  // purely imaginary part carries component 1
      c1[idx] = s * Complex{d.imag(), -d.real()};
    }
  }
  out.zero_mean_mode();
  return out;
}

void Workspace::scalar_to_physical(std::span<const Complex> coeffs, std::span<double> out) {
  const int m = grid_.modes();
  if (coeffs.size() != static_cast<size_t>(m) || out.size() != static_cast<size_t>(m)) {
    throw InvalidArgument("scalar transform size mismatch");
  }
  for (int i = 0; i < m; ++i) buf_[i] = coeffs[i];
  fftw_execute(bwd_);
  for (int i = 0; i < m; ++i) out[i] = buf_[i].real();
}

}  // namespace sgf
