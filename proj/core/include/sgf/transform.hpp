#pragma once

#include <fftw3.h>

#include <span>
#include <vector>

#include "sgf/field.hpp"

namespace sgf {

// Owns the FFTW plans and scratch buffer for one grid.  Not thread safe:
// concurrent simulations must each use their own Workspace (plan creation
// itself is serialized internally, so constructing Workspaces from several
// threads is fine).
//
// Plans are created with FFTW_ESTIMATE on an fftw_malloc'ed buffer so the
// chosen algorithm, and therefore every output bit, depends only on the
// grid size and not on timing or caller buffer alignment.
class Workspace {
 public:
  explicit Workspace(const TorusGrid& grid);
  ~Workspace();

  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const TorusGrid& grid() const { return grid_; }

  // Collocation samples of a coefficient field.  The input is assumed
  // conjugate-symmetric (all constructors in this library guarantee it);
  // imaginary parts of the samples are discarded.
  PhysicalVectorField to_physical(const SpectralVectorField& u);

  // Forward transform of real samples.  The two components share one
  // complex FFT, and the unpacking enforces exact conjugate symmetry.
  // The mean mode of the result is forced to zero: every velocity field
  // in this library is mean-free, and for the nonlinear products the
  // analytic mean vanishes as well, so only roundoff is removed.
  SpectralVectorField to_spectral(const PhysicalVectorField& u);

  // Scalar variant used for vorticity-like quantities.
  void scalar_to_physical(std::span<const Complex> coeffs, std::span<double> out);

 private:
  TorusGrid grid_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
  Complex* buf_ = nullptr;
};

}  // namespace sgf
