#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sgf/grid.hpp"

namespace sgf {

using Complex = std::complex<double>;

// Velocity field stored as Fourier coefficients u_hat[k] in C^2 with the
// convention u_hat[k] = n^{-2} sum_x u(x) e^{-i k.x}, so that
// integral |u|^2 dx = L^2 sum_k |u_hat[k]|^2.
//
// Components are stored contiguously (component-major, rows of i1 then i2).
// The divergence_free flag is metadata set by the constructors and
// operators that guarantee k.u_hat[k] = 0; it is preserved by diagonal
// Fourier multipliers.
class SpectralVectorField {
 public:
  SpectralVectorField() = default;

  explicit SpectralVectorField(const TorusGrid& grid)
      : grid_(grid), a_(2 * static_cast<size_t>(grid.modes())) {}

  const TorusGrid& grid() const { return grid_; }

  Complex& at(int c, int i1, int i2) { return a_[index(c, i1, i2)]; }
  const Complex& at(int c, int i1, int i2) const { return a_[index(c, i1, i2)]; }

  std::span<Complex> component(int c) {
    return {a_.data() + static_cast<size_t>(c) * grid_.modes(),
            static_cast<size_t>(grid_.modes())};
  }
  std::span<const Complex> component(int c) const {
    return {a_.data() + static_cast<size_t>(c) * grid_.modes(),
            static_cast<size_t>(grid_.modes())};
  }

  std::span<const Complex> raw() const { return a_; }
  std::span<Complex> raw() { return a_; }

  bool divergence_free() const { return divergence_free_; }
  void set_divergence_free(bool v) { divergence_free_ = v; }

  void zero_mean_mode() {
    a_[index(0, 0, 0)] = Complex{};
    a_[index(1, 0, 0)] = Complex{};
  }

  // Projects onto the conjugate-symmetric subspace by averaging each
  // (k, -k) pair, making the represented samples exactly real.
  void symmetrize() {
    const int n = grid_.n;
    for (int c = 0; c < 2; ++c) {
      for (int i1 = 0; i1 < n; ++i1) {
        const int p1 = grid_.conj_row(i1);
        if (p1 < i1) continue;
        for (int i2 = 0; i2 < n; ++i2) {
          const int p2 = grid_.conj_row(i2);
          if (p1 == i1 && p2 < i2) continue;
          Complex& x = at(c, i1, i2);
          Complex& y = at(c, p1, p2);
          if (p1 == i1 && p2 == i2) {
            x = Complex{x.real(), 0.0};
          } else {
            const Complex avg = 0.5 * (x + std::conj(y));
            x = avg;
            y = std::conj(avg);
          }
        }
      }
    }
  }

  SpectralVectorField& operator+=(const SpectralVectorField& o) {
    check_same_grid(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    divergence_free_ = divergence_free_ && o.divergence_free_;
    return *this;
  }

  SpectralVectorField& operator-=(const SpectralVectorField& o) {
    check_same_grid(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    divergence_free_ = divergence_free_ && o.divergence_free_;
    return *this;
  }

  SpectralVectorField& scale(double s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  // this += s * o
  SpectralVectorField& axpy(double s, const SpectralVectorField& o) {
    check_same_grid(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += s * o.a_[i];
    divergence_free_ = divergence_free_ && o.divergence_free_;
    return *this;
  }

  void check_same_grid(const SpectralVectorField& o) const {
    if (!(grid_ == o.grid_)) throw InvalidArgument("field grids differ");
  }

 private:
  size_t index(int c, int i1, int i2) const {
    return (static_cast<size_t>(c) * grid_.n + i1) * grid_.n + i2;
  }

  TorusGrid grid_;
  std::vector<Complex> a_;
  bool divergence_free_ = false;
};

// Real velocity samples u(x) on the collocation lattice, component-major.
class PhysicalVectorField {
 public:
  PhysicalVectorField() = default;

  explicit PhysicalVectorField(const TorusGrid& grid)
      : grid_(grid), s_(2 * static_cast<size_t>(grid.modes())) {}

  const TorusGrid& grid() const { return grid_; }

  double& at(int c, int i1, int i2) { return s_[index(c, i1, i2)]; }
  const double& at(int c, int i1, int i2) const { return s_[index(c, i1, i2)]; }

  std::span<double> component(int c) {
    return {s_.data() + static_cast<size_t>(c) * grid_.modes(),
            static_cast<size_t>(grid_.modes())};
  }
  std::span<const double> component(int c) const {
    return {s_.data() + static_cast<size_t>(c) * grid_.modes(),
            static_cast<size_t>(grid_.modes())};
  }

  double x1(int i1) const { return grid_.spacing() * i1; }
  double x2(int i2) const { return grid_.spacing() * i2; }

 private:
  size_t index(int c, int i1, int i2) const {
    return (static_cast<size_t>(c) * grid_.n + i1) * grid_.n + i2;
  }

  TorusGrid grid_;
  std::vector<double> s_;
};

}  // namespace sgf
