#pragma once

#include <vector>

#include "sgf/field.hpp"

namespace sgf {

// Zeroes every mode outside the two-thirds band (|j_c| < n/3 in both
// directions).  Idempotent; keeps the divergence-free flag.
SpectralVectorField dealias(SpectralVectorField u);

// Orthogonal projection onto mean-free divergence-free fields,
// mode-wise u_hat -> kperp (kperp . u_hat)/|k|^2 with kperp = (-k2, k1).
// The mean mode is zeroed.
SpectralVectorField leray_project(const SpectralVectorField& u);

// Stokes operator A = -Laplacian restricted to divergence-free fields:
// multiplies each mode by |k|^2.  Rejects inputs whose divergence-free
// flag is not set.
SpectralVectorField stokes_apply(const SpectralVectorField& u);

// (I + alpha A) u, i.e. mode-wise multiplication by 1 + alpha |k|^2.
SpectralVectorField helmholtz_apply(const SpectralVectorField& u, double alpha);

// (I + alpha A)^{-1} u, mode-wise division by 1 + alpha |k|^2.
// alpha = 0 is the identity; alpha < 0 is rejected.
SpectralVectorField inverse_helmholtz(const SpectralVectorField& u, double alpha);

// Spectral partial derivative along the given axis (0 or 1).
SpectralVectorField derivative(const SpectralVectorField& u, int axis);

// Scalar vorticity coefficients i (k1 u2_hat - k2 u1_hat), row-major.
std::vector<Complex> curl_coefficients(const SpectralVectorField& u);

// |k|^{2s} evaluated from lambda = |k|^2, with an exact multiply chain
// when 2s is a small even integer so norm weights reproduce bit for bit.
double sobolev_mode_weight(double lambda, double s);

// Homogeneous Sobolev norm (L^2 sum_{k != 0} |k|^{2s} |u_hat|^2)^{1/2}.
// s = 0 is the L^2 norm, s = 1 the gradient norm; negative s weights the
// low modes.  The mean mode never contributes (it is identically zero).
double sobolev_norm(const SpectralVectorField& u, double s);

// L^2 inner product, L^2 sum_k Re(u_hat . conj(w_hat)).
double h_inner(const SpectralVectorField& u, const SpectralVectorField& w);

// Gradient inner product, L^2 sum_k |k|^2 Re(u_hat . conj(w_hat)).
double grad_inner(const SpectralVectorField& u, const SpectralVectorField& w);

// (u, w) + alpha (grad u, grad w).  Rejects alpha < 0.
double inner_product_v(const SpectralVectorField& u, const SpectralVectorField& w,
                       double alpha);

// max_k |k . u_hat_k|, the worst-mode divergence.
double max_divergence(const SpectralVectorField& u);

// Largest coefficient magnitude over both components.
double max_abs_coeff(const SpectralVectorField& u);

}  // namespace sgf
