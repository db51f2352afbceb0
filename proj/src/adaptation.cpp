// src/adaptation.cpp
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

#include "svkit/adaptation.hpp"

#include <algorithm>
#include <cmath>

namespace svkit {

Matrix coral_transform(const SymMatrix& c_out, const SymMatrix& c_in,
                       double floor) {
  if (c_out.dim() != c_in.dim())
    throw DataError("coral_transform: dimension mismatch");
  SymMatrix in_sqrt = sym_sqrt(c_in, /*inverse=*/false, floor);
  SymMatrix out_inv_sqrt = sym_sqrt(c_out, /*inverse=*/true, floor);
  return in_sqrt.full() * out_inv_sqrt.full();
}

EmbeddingSet coral_adapt_embeddings(const EmbeddingSet& out_domain,
                                    const EmbeddingSet& in_domain) {
  if (out_domain.dim() != in_domain.dim())
    throw DataError("coral_adapt_embeddings: dimension mismatch");
  if (out_domain.size() < 2 || in_domain.size() < 2)
    throw DataError("coral_adapt_embeddings: need at least two utterances per set");

  MeanCov out_stats = sample_mean_cov(out_domain.as_matrix());
  MeanCov in_stats = sample_mean_cov(in_domain.as_matrix());
  Matrix a = coral_transform(out_stats.cov, in_stats.cov);

  std::vector<Vec> adapted;
  adapted.reserve(out_domain.size());
  for (const Embedding& e : out_domain.records())
    adapted.push_back(
        vec_add(mat_vec(a, vec_sub(e.vec, out_stats.mean)), in_stats.mean));
  return out_domain.with_vectors(std::move(adapted));
}

SymMatrix coral_plus_covariance(const SymMatrix& phi, const SymMatrix& phi_pseudo,
                                double alpha, double floor) {
  if (phi.dim() != phi_pseudo.dim())
    throw DataError("coral_plus_covariance: dimension mismatch");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DataError("coral_plus_covariance: alpha must be in [0, 1]");

  SimulDiag sd = simultaneous_diagonalize(phi, phi_pseudo, floor);
  // B = sd.u, B^{-T} = sd.a; the correction is A diag(max(lambda,1) - 1) A^T.
  const int d = phi.dim();
  SymMatrix correction(d);
  for (int k = 0; k < d; ++k) {
    double excess = std::max(sd.psi[k], 1.0) - 1.0;
    if (excess == 0.0) continue;
    Vec col(d);
    for (int i = 0; i < d; ++i) col[i] = sd.a(i, k);
    correction.add_outer(col, alpha * excess);
  }
  return phi + correction;
}

ModelCovariances reconstruct_covariances(const PldaModel& model) {
  Matrix a = invert(model.a_inv());
  ModelCovariances out;
  out.mean = model.mean();
  out.within = congruence_t(a, SymMatrix::identity(model.dim()));
  out.between = congruence_t(a, SymMatrix::diag(model.psi()));
  return out;
}

namespace {

PldaModel rebuild(Vec mean, const SymMatrix& phi_w, const SymMatrix& phi_b,
                  double floor) {
  SimulDiag sd = simultaneous_diagonalize(phi_w, phi_b, floor);
  Vec psi(sd.psi);
  for (double& p : psi) p = std::max(p, 0.0);
  return PldaModel(std::move(mean), transpose(sd.u), std::move(psi));
}

}  // namespace

PldaModel coral_adapt_model(const PldaModel& model, const EmbeddingSet& in_domain,
                            double floor) {
  if (in_domain.dim() != model.dim())
    throw DataError("coral_adapt_model: dimension mismatch");
  if (in_domain.size() < 2)
    throw DataError("coral_adapt_model: need at least two in-domain utterances");

  ModelCovariances covs = reconstruct_covariances(model);
  MeanCov in_stats = sample_mean_cov(in_domain.as_matrix());
  SymMatrix total = covs.between + covs.within;
  Matrix a = coral_transform(total, in_stats.cov, floor);
  SymMatrix phi_b = congruence_t(a, covs.between);
  SymMatrix phi_w = congruence_t(a, covs.within);
  return rebuild(std::move(in_stats.mean), phi_w, phi_b, floor);
}

PldaModel coral_plus_adapt_model(const PldaModel& model,
                                 const EmbeddingSet& in_domain,
                                 const AdaptConfig& cfg) {
  if (in_domain.dim() != model.dim())
    throw DataError("coral_plus_adapt_model: dimension mismatch");
  if (in_domain.size() < 2)
    throw DataError("coral_plus_adapt_model: need at least two in-domain utterances");
  if (!(cfg.alpha_b >= 0.0 && cfg.alpha_b <= 1.0) ||
      !(cfg.alpha_w >= 0.0 && cfg.alpha_w <= 1.0))
    throw DataError("coral_plus_adapt_model: alphas must be in [0, 1]");

  ModelCovariances covs = reconstruct_covariances(model);
  MeanCov in_stats = sample_mean_cov(in_domain.as_matrix());

  SymMatrix total = covs.between + covs.within;
  Matrix a = coral_transform(total, in_stats.cov, cfg.floor);
  SymMatrix pseudo_b = congruence_t(a, covs.between);
  SymMatrix pseudo_w = congruence_t(a, covs.within);

  SymMatrix phi_b = coral_plus_covariance(covs.between, pseudo_b, cfg.alpha_b, cfg.floor);
  SymMatrix phi_w = coral_plus_covariance(covs.within, pseudo_w, cfg.alpha_w, cfg.floor);
  return rebuild(std::move(in_stats.mean), phi_w, phi_b, cfg.floor);
}

}  // namespace svkit
