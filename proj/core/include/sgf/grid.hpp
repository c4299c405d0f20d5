#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "sgf/errors.hpp"

namespace sgf {

// Uniform n-by-n collocation lattice on the periodic square [0,L]^2.
//
// Fourier storage follows the usual FFT layout: storage row i holds the
// integer frequency j = i for i < n/2 and j = i - n otherwise, so that
// j ranges over [-n/2, n/2).  The physical wavenumber of row i is
// k = (2*pi/L) * j.
struct TorusGrid {
  double length = 2.0 * std::numbers::pi;
  int n = 64;

  TorusGrid() = default;

  TorusGrid(double length_, int n_) : length(length_), n(n_) {
    if (!(length > 0.0)) throw InvalidArgument("grid length must be > 0");
    if (n < 8 || n % 2 != 0) throw InvalidArgument("grid size must be even and >= 8");
  }

  int modes() const { return n * n; }

  // Integer frequency of storage row i.
  int freq(int i) const { return i < n / 2 ? i : i - n; }

  // Storage row of integer frequency j in [-n/2, n/2).
  int row_of(int j) const { return j >= 0 ? j : j + n; }

  int row_of_checked(int j) const {
    if (j < -n / 2 || j >= n / 2) {
      throw InvalidArgument("mode index out of range for this grid");
    }
    return row_of(j);
  }

  // Storage row of the conjugate frequency -j.
  int conj_row(int i) const { return i == 0 ? 0 : n - i; }

  double k0() const { return 2.0 * std::numbers::pi / length; }

  // |k|^2 for the mode stored at (i1, i2).
  double lambda(int i1, int i2) const {
    const double j1 = freq(i1);
    const double j2 = freq(i2);
    return k0() * k0() * (j1 * j1 + j2 * j2);
  }

  bool is_mean(int i1, int i2) const { return i1 == 0 && i2 == 0; }

  // Two-thirds rule: a mode survives iff |j_c| < n/3 in both directions.
  bool dealias_keep(int i1, int i2) const {
    return 3 * std::abs(freq(i1)) < n && 3 * std::abs(freq(i2)) < n;
  }

  double spacing() const { return length / n; }
  double cell_area() const { return spacing() * spacing(); }

  // Square of L/(2*pi), i.e. the reciprocal of the smallest Stokes
  // eigenvalue on this domain.
  double poincare_constant() const {
    const double r = length / (2.0 * std::numbers::pi);
    return r * r;
  }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

}  // namespace sgf
