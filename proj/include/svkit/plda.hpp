// include/svkit/plda.hpp
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

#ifndef SVKIT_PLDA_HPP_
#define SVKIT_PLDA_HPP_

#include "svkit/numlin.hpp"
#include "svkit/types.hpp"

namespace svkit {

// Two-covariance PLDA in diagonalized form. The generative model is
//   x = m + A u,   u ~ N(v, I),   v ~ N(0, diag(psi)),
// equivalently a within-class covariance Phi_w = A A^T and a between-class
// covariance Phi_b = A diag(psi) A^T over speaker centers. The stored
// transform is A^{-1}; preprocessing maps an embedding to u = A^{-1}(x - m),
// where the within-class covariance is the identity and the between-class
// covariance is diag(psi).
//
// Scoring uses the per-dimension constants
//   c_i = -log((2 psi_i + 1) / (psi_i + 1)^2)
//   m_i = psi_i / ((2 psi_i + 1) (psi_i + 1)),
// which reduce the same/different-speaker log-likelihood ratio to scalar
// operations (see llr_score). psi_i = 0 forces c_i = m_i = 0.
class PldaModel {
 public:
  // psi must be sorted descending with nonnegative entries; a_inv must be
  // square and match mean's dimension.
  PldaModel(Vec mean, Matrix a_inv, Vec psi);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Vec& mean() const { return mean_; }
  const Matrix& a_inv() const { return a_inv_; }
  const Vec& psi() const { return psi_; }
  const Vec& const_c() const { return const_c_; }
  const Vec& const_m() const { return const_m_; }

 private:
  Vec mean_;
  Matrix a_inv_;
  Vec psi_;
  Vec const_c_;
  Vec const_m_;
};

struct PldaFitConfig {
  int em_iters = 20;
  double tol = 1e-6;      // relative log-likelihood improvement threshold
  double floor = 1e-10;   // relative eigenvalue floor
};

struct PldaFitStats {
  // Average per-utterance marginal log-likelihood under the parameters at
  // the start of each EM iteration.
  std::vector<double> avg_loglik;
  int iters_run = 0;
};

// Fits the two-covariance model by EM on a labeled set. The global mean is
// fixed at the training mean; each iteration computes exact per-speaker
// posteriors (handling unequal session counts) and refreshes the
// within/between covariances. The result is re-diagonalized into a
// PldaModel. Requires at least two speakers.
PldaModel fit_plda(const EmbeddingSet& set, const PldaFitConfig& cfg = {},
                   PldaFitStats* stats = nullptr);

// u = A^{-1} (x - m)
Vec preprocess(const PldaModel& model, const Vec& x);

// Same/different-speaker log-likelihood ratio of two preprocessed
// embeddings, scalar closed form:
//   LLR = 1/2 sum_i { c_i + m_i (2 u1_i u2_i - psi_i (u1_i - u2_i)^2) }.
double llr_score(const PldaModel& model, const Vec& u1, const Vec& u2);

// Exact joint-Gaussian evaluation of the same ratio:
//   log N([u1;u2]; 0, [[Psi+I, Psi], [Psi, Psi+I]])
//     - log N(u1; 0, Psi+I) - log N(u2; 0, Psi+I),
// computed through dense Cholesky factorizations. Kept as an independent
// path for checking llr_score; do not use it for batch scoring.
double llr_score_oracle(const PldaModel& model, const Vec& u1, const Vec& u2);

enum class Hypothesis { kSameSpeaker, kDifferentSpeaker };

// Closed-form expectation of the per-dimension LLR term
// m_i (2 u1 u2 - psi (u1 - u2)^2): zero when the speakers are the same,
// -2 psi^2 / (2 psi + 1) when they differ.
double expected_llr_term(double psi_i, Hypothesis h);

}  // namespace svkit

#endif  // SVKIT_PLDA_HPP_
