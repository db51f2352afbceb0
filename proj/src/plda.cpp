// src/plda.cpp
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

#include "svkit/plda.hpp"

#include <algorithm>
#include <cmath>

namespace svkit {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void check_psi(const Vec& psi) {
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (!std::isfinite(psi[i]) || psi[i] < 0.0)
      throw DataError("PldaModel: psi entries must be finite and nonnegative");
    if (i > 0 && psi[i] > psi[i - 1])
      throw DataError("PldaModel: psi must be sorted descending");
  }
}

}  // namespace

PldaModel::PldaModel(Vec mean, Matrix a_inv, Vec psi)
    : mean_(std::move(mean)), a_inv_(std::move(a_inv)), psi_(std::move(psi)) {
  const int d = dim();
  if (d < 1) throw DataError("PldaModel: dimension must be at least 1");
  if (a_inv_.rows() != d || a_inv_.cols() != d)
    throw DataError("PldaModel: transform shape does not match dimension");
  if (static_cast<int>(psi_.size()) != d)
    throw DataError("PldaModel: psi length does not match dimension");
  if (!all_finite(mean_) || !a_inv_.all_finite())
    throw DataError("PldaModel: non-finite parameter");
  check_psi(psi_);

  const_c_.resize(d);
  const_m_.resize(d);
  for (int i = 0; i < d; ++i) {
    double p = psi_[i];
    if (p == 0.0) {
      const_c_[i] = 0.0;
      const_m_[i] = 0.0;
    } else {
      const_c_[i] = -std::log((2.0 * p + 1.0) / ((p + 1.0) * (p + 1.0)));
      const_m_[i] = p / ((2.0 * p + 1.0) * (p + 1.0));
    }
  }
}

Vec preprocess(const PldaModel& model, const Vec& x) {
  if (static_cast<int>(x.size()) != model.dim())
    throw DataError("preprocess: dimension mismatch");
  return mat_vec(model.a_inv(), vec_sub(x, model.mean()));
}

double llr_score(const PldaModel& model, const Vec& u1, const Vec& u2) {
  const int d = model.dim();
  if (static_cast<int>(u1.size()) != d || static_cast<int>(u2.size()) != d)
    throw DataError("llr_score: dimension mismatch");
  const Vec& psi = model.psi();
  const Vec& cc = model.const_c();
  const Vec& cm = model.const_m();
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    double diff = u1[i] - u2[i];
    sum += cc[i] + cm[i] * (2.0 * u1[i] * u2[i] - psi[i] * diff * diff);
  }
  return 0.5 * sum;
}

namespace {

// log N(x; 0, S) via Cholesky.
double gaussian_logpdf(const Vec& x, const SymMatrix& s) {
  const int n = s.dim();
  Matrix l = cholesky(s);
  // Solve L y = x.
  Vec y(n);
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) {
    double sum = x[i];
    for (int k = 0; k < i; ++k) sum -= l(i, k) * y[k];
    y[i] = sum / l(i, i);
    logdet += std::log(l(i, i));
  }
  return -0.5 * (n * kLog2Pi + dot(y, y)) - logdet;
}

}  // namespace

double llr_score_oracle(const PldaModel& model, const Vec& u1, const Vec& u2) {
  const int d = model.dim();
  if (static_cast<int>(u1.size()) != d || static_cast<int>(u2.size()) != d)
    throw DataError("llr_score_oracle: dimension mismatch");
  const Vec& psi = model.psi();

  SymMatrix joint(2 * d);
  SymMatrix marginal(d);
  for (int i = 0; i < d; ++i) {
    joint.set(i, i, psi[i] + 1.0);
    joint.set(d + i, d + i, psi[i] + 1.0);
    joint.set(i, d + i, psi[i]);
    marginal.set(i, i, psi[i] + 1.0);
  }
  Vec stacked(2 * d);
  std::copy(u1.begin(), u1.end(), stacked.begin());
  std::copy(u2.begin(), u2.end(), stacked.begin() + d);

  return gaussian_logpdf(stacked, joint) - gaussian_logpdf(u1, marginal) -
         gaussian_logpdf(u2, marginal);
}

double expected_llr_term(double psi_i, Hypothesis h) {
  if (!(psi_i >= 0.0)) throw DataError("expected_llr_term: psi must be nonnegative");
  if (h == Hypothesis::kSameSpeaker) return 0.0;
  return -2.0 * psi_i * psi_i / (2.0 * psi_i + 1.0);
}

namespace {

struct SpeakerStats {
  int count = 0;
  Vec sum;  // of centered embeddings
};

// Marginal log-likelihood of one speaker's sessions in the diagonalized
// space, plus the Jacobian term handled by the caller. Per dimension the
// n_s sessions are jointly Gaussian with covariance I + psi 1 1^T:
//   logdet = log(1 + n psi),
//   quadratic form = sum_j u_j^2 - psi / (1 + n psi) * (sum_j u_j)^2.
double speaker_loglik(const Vec& psi, const std::vector<Vec>& sessions,
                      const Vec& session_sum) {
  const int d = static_cast<int>(psi.size());
  const int n = static_cast<int>(sessions.size());
  double ll = 0.0;
  for (int i = 0; i < d; ++i) {
    double sq = 0.0;
    for (const Vec& u : sessions) sq += u[i] * u[i];
    double t = session_sum[i];
    double denom = 1.0 + n * psi[i];
    ll += -0.5 * (n * kLog2Pi + std::log(denom) + sq - psi[i] / denom * t * t);
  }
  return ll;
}

}  // namespace

PldaModel fit_plda(const EmbeddingSet& set, const PldaFitConfig& cfg,
                   PldaFitStats* stats) {
  if (!set.labeled()) throw DataError("fit_plda: training set must be labeled");
  if (set.num_speakers() < 2)
    throw DataError("fit_plda: need at least two speakers");
  if (cfg.em_iters < 1) throw DataError("fit_plda: em_iters must be >= 1");
  if (!(cfg.tol > 0.0)) throw DataError("fit_plda: tol must be positive");

  const int d = set.dim();
  const int n_total = set.size();
  const int n_speakers = set.num_speakers();

  // Global training mean; held fixed through EM.
  Vec mean(d, 0.0);
  for (const Embedding& e : set.records()) vec_axpy(1.0, e.vec, &mean);
  for (double& v : mean) v /= n_total;

  // Centered data, grouped by speaker.
  std::vector<std::vector<Vec>> grouped(n_speakers);
  for (int s = 0; s < n_speakers; ++s)
    for (int idx : set.speaker_records()[s])
      grouped[s].push_back(vec_sub(set.record(idx).vec, mean));

  // Scatter-based initialization: within-class scatter over deviations from
  // speaker means (divisor N), between-class scatter of speaker means
  // (divisor n_speakers).
  SymMatrix phi_w(d), phi_b(d);
  for (int s = 0; s < n_speakers; ++s) {
    const auto& sessions = grouped[s];
    Vec smean(d, 0.0);
    for (const Vec& u : sessions) vec_axpy(1.0, u, &smean);
    for (double& v : smean) v /= static_cast<double>(sessions.size());
    for (const Vec& u : sessions) phi_w.add_outer(vec_sub(u, smean), 1.0);
    phi_b.add_outer(smean, 1.0);
  }
  phi_w.scale(1.0 / n_total);
  phi_b.scale(1.0 / n_speakers);

  PldaFitStats local_stats;
  PldaFitStats* st = stats ? stats : &local_stats;
  st->avg_loglik.clear();
  st->iters_run = 0;

  SimulDiag sd;
  for (int iter = 0; iter < cfg.em_iters; ++iter) {
    sd = simultaneous_diagonalize(phi_w, phi_b, cfg.floor);
    Vec psi(sd.psi);
    for (double& p : psi) p = std::max(p, 0.0);
    Matrix u_t = transpose(sd.u);  // A^{-1}

    // Project all sessions into the diagonalized space.
    std::vector<std::vector<Vec>> proj(n_speakers);
    double loglik = 0.0;
    SymMatrix second_moment(d);   // sum over all sessions of u u^T
    std::vector<Vec> sums(n_speakers);
    for (int s = 0; s < n_speakers; ++s) {
      proj[s].reserve(grouped[s].size());
      Vec sum(d, 0.0);
      for (const Vec& xc : grouped[s]) {
        Vec u = mat_vec(u_t, xc);
        vec_axpy(1.0, u, &sum);
        second_moment.add_outer(u, 1.0);
        proj[s].push_back(std::move(u));
      }
      sums[s] = std::move(sum);
      loglik += speaker_loglik(psi, proj[s], sums[s]);
    }
    loglik += n_total * sd.log_abs_det_u;  // density transform back to x-space
    st->avg_loglik.push_back(loglik / n_total);
    st->iters_run = iter + 1;

    // E-step posteriors are diagonal: variance psi/(1 + n psi), mean
    // n psi/(1 + n psi) * session mean, per dimension. M-step refreshes the
    // covariances from posterior moments, then maps back through A.
    SymMatrix b_new(d), w_new(second_moment);
    Vec post_var(d), post_mean(d);
    for (int s = 0; s < n_speakers; ++s) {
      const int n = static_cast<int>(proj[s].size());
      for (int i = 0; i < d; ++i) {
        double denom = 1.0 + n * psi[i];
        post_var[i] = psi[i] / denom;
        post_mean[i] = post_var[i] * sums[s][i];
      }
      for (int i = 0; i < d; ++i) b_new.add(i, i, post_var[i]);
      b_new.add_outer(post_mean, 1.0);
      // within stats: sum_j (u_j - mu)(u_j - mu)^T + n * post_var
      //             = sum_j u_j u_j^T - t mu^T - mu t^T + n mu mu^T + n pv
      for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j)
          w_new.add(i, j, -sums[s][i] * post_mean[j] - post_mean[i] * sums[s][j] +
                              n * post_mean[i] * post_mean[j]);
      for (int i = 0; i < d; ++i) w_new.add(i, i, n * post_var[i]);
    }
    b_new.scale(1.0 / n_speakers);
    w_new.scale(1.0 / n_total);

    phi_b = congruence_t(sd.a, b_new);
    phi_w = congruence_t(sd.a, w_new);

    if (iter >= 1) {
      double prev = st->avg_loglik[iter - 1], cur = st->avg_loglik[iter];
      if (cur - prev < cfg.tol * std::abs(prev)) break;
    }
  }

  sd = simultaneous_diagonalize(phi_w, phi_b, cfg.floor);
  Vec psi(sd.psi);
  for (double& p : psi) p = std::max(p, 0.0);
  return PldaModel(std::move(mean), transpose(sd.u), std::move(psi));
}

}  // namespace svkit
