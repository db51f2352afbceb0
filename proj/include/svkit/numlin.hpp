// include/svkit/numlin.hpp
//
// Copyright 2026  svkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SVKIT_NUMLIN_HPP_
#define SVKIT_NUMLIN_HPP_

#include "svkit/matrix.hpp"

namespace svkit {

// Relative eigenvalue floor applied to matrices that must be positive
// definite before inversion or Cholesky. Keeps degenerate inputs (zero
// within-class variance, psi = 0 dimensions) from aborting training.
inline constexpr double kDefaultEigFloor = 1e-10;

struct MeanCov {
  Vec mean;
  SymMatrix cov;
};

// Arithmetic mean and maximum-likelihood covariance (divisor N) of the rows
// of x. N >= 1 required.
MeanCov sample_mean_cov(const Matrix& x);
MeanCov sample_mean_cov(const std::vector<Vec>& rows);

// Plain Cholesky S = L L^T (L lower triangular). Throws NumericError if S is
// not positive definite.
Matrix cholesky(const SymMatrix& s);

// Eigenvalues of s floored at rel_floor * lambda_max (an absolute floor of
// rel_floor is used when lambda_max <= 0), reconstructed as a SymMatrix.
SymMatrix floor_spd(const SymMatrix& s, double rel_floor = kDefaultEigFloor);

// Cholesky that falls back to eigenvalue flooring when the plain
// factorization fails.
Matrix cholesky_floored(const SymMatrix& s, double rel_floor = kDefaultEigFloor);

struct EigResult {
  Vec values;      // descending
  Matrix vectors;  // orthonormal columns, matching order, canonical signs
};

// Symmetric eigendecomposition via cyclic Jacobi rotations. Deterministic:
// eigenvalues sorted descending (stable), each eigenvector's largest-|entry|
// component made positive.
EigResult sym_eig(const SymMatrix& s);

// Symmetric square root R with R R = S, or R R = S^{ -1 } when inverse is
// set. The inverse path floors eigenvalues first; the forward path clamps
// small negatives to zero and rejects genuinely negative spectra.
SymMatrix sym_sqrt(const SymMatrix& s, bool inverse = false,
                   double rel_floor = kDefaultEigFloor);

struct SimulDiag {
  Matrix u;   // U^T phi_w U = I,  U^T phi_b U = diag(psi)
  Matrix a;   // A = U^{-T}
  Vec psi;    // descending
  double log_abs_det_u = 0.0;
};

// Joint diagonalization of a positive-definite within matrix and a positive
// semidefinite between matrix: whiten by Cholesky of phi_w, eigendecompose
// the whitened phi_b. Columns of U are permuted to keep psi descending.
SimulDiag simultaneous_diagonalize(const SymMatrix& phi_w, const SymMatrix& phi_b,
                                   double rel_floor = kDefaultEigFloor);

// Inverse of a lower-triangular matrix by forward substitution.
Matrix invert_lower(const Matrix& l);

// General square inverse (Gauss-Jordan with partial pivoting).
Matrix invert(const Matrix& a);

}  // namespace svkit

#endif  // SVKIT_NUMLIN_HPP_
