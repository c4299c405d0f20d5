#pragma once

#include "sgf/field.hpp"
#include "sgf/transform.hpp"

namespace sgf {

// Rotational nonlinearity curl(u - alpha*Lap u) x u, evaluated
// pseudospectrally: the filtered vorticity (1 + alpha|k|^2) omega_hat and
// the velocity are moved to the lattice, multiplied pointwise as
// omega_alpha * (-u2, u1), and transformed back.  Inputs and the product
// are dealiased with the two-thirds rule.  The result is NOT projected;
// callers compose with leray_project.
SpectralVectorField curl_cross(const SpectralVectorField& u, double alpha, Workspace& ws);

// Navier-Stokes advection P((v . grad) v): gradients taken spectrally,
// products on the lattice, dealiased, then projected.
SpectralVectorField advection(const SpectralVectorField& v, Workspace& ws);

// The alpha-weighted commutator sum
//   alpha * sum_{i,k} P( d_i d_k (u_i d_k u) + d_i (d_k u_i d_k u)
//                        - d_k (d_k u_i grad u_i) )
// measuring how far the filtered evolution sits from Navier-Stokes.
// Exactly linear in alpha (the factor multiplies at the end).
SpectralVectorField remainder(const SpectralVectorField& u, double alpha, Workspace& ws);

// The projected nonlinear drift used by the time stepper: advection for
// alpha = 0, projected curl_cross otherwise.
SpectralVectorField nonlinear_term(const SpectralVectorField& u, double alpha,
                                   Workspace& ws);

}  // namespace sgf
