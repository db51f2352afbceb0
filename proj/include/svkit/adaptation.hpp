// include/svkit/adaptation.hpp
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

#ifndef SVKIT_ADAPTATION_HPP_
#define SVKIT_ADAPTATION_HPP_

#include "svkit/plda.hpp"

namespace svkit {

struct AdaptConfig {
  double alpha_b = 0.5;   // interpolation weight, between-class covariance
  double alpha_w = 0.5;   // interpolation weight, within-class covariance
  double floor = 1e-10;   // relative eigenvalue floor
};

// Covariance-alignment transform A = C_in^{1/2} C_out^{-1/2} (symmetric
// square roots): whitens out-of-domain statistics and re-colors them with
// the in-domain covariance, so A C_out A^T = C_in.
Matrix coral_transform(const SymMatrix& c_out, const SymMatrix& c_in,
                       double floor = kDefaultEigFloor);

// Applies the alignment to the out-of-domain embeddings themselves:
// x' = A (x - mean_out) + mean_in. The adapted set carries the in-domain
// sample mean and covariance; ids, labels and domain tag pass through.
EmbeddingSet coral_adapt_embeddings(const EmbeddingSet& out_domain,
                                    const EmbeddingSet& in_domain);

// Regularized covariance update. With B jointly diagonalizing
// B^T Phi B = I and B^T Phi_pseudo B = Lambda:
//   Phi+ = Phi + alpha * B^{-T} (max(Lambda, I) - I) B^{-1}.
// The elementwise max keeps every variance from shrinking, so
// Phi+ >= Phi in the positive-semidefinite order.
SymMatrix coral_plus_covariance(const SymMatrix& phi, const SymMatrix& phi_pseudo,
                                double alpha, double floor = kDefaultEigFloor);

struct ModelCovariances {
  Vec mean;
  SymMatrix between;  // Phi_b = A diag(psi) A^T
  SymMatrix within;   // Phi_w = A A^T
};

// Undoes the simultaneous diagonalization of a stored model.
ModelCovariances reconstruct_covariances(const PldaModel& model);

// Plain model-level alignment: both covariances are conjugated by the
// transform built from total covariances, the mean is replaced by the
// in-domain sample mean, and the result is re-diagonalized.
PldaModel coral_adapt_model(const PldaModel& model, const EmbeddingSet& in_domain,
                            double floor = kDefaultEigFloor);

// Model-level adaptation with interpolation and the non-shrinking
// regularizer: pseudo in-domain covariances from the alignment transform
// feed coral_plus_covariance per covariance, the mean is re-centered, and
// the result is re-diagonalized. The in-domain set may be unlabeled.
PldaModel coral_plus_adapt_model(const PldaModel& model,
                                 const EmbeddingSet& in_domain,
                                 const AdaptConfig& cfg = {});

}  // namespace svkit

#endif  // SVKIT_ADAPTATION_HPP_
