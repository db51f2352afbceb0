// src/diagnostics.cpp
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

#include "svkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace svkit {

void Histogram::insert(double v) {
  int b = static_cast<int>(std::floor((v - kLo) / (kHi - kLo) * kBins));
  b = std::max(0, std::min(kBins - 1, b));
  ++counts[b];
}

std::int64_t Histogram::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

DistanceHistograms distance_histograms(const EmbeddingSet& set,
                                       std::uint64_t seed,
                                       std::int64_t max_pairs) {
  if (!set.labeled()) throw DataError("distance_histograms: set is unlabeled");
  if (set.num_speakers() < 2)
    throw DataError("distance_histograms: need at least two speakers");

  DistanceHistograms out;
  auto distance = [&](int i, int j) {
    return 1.0 - cosine_score(set.record(i).vec, set.record(j).vec);
  };

  // Within: same-speaker pairs.
  std::int64_t within_total = 0;
  for (const auto& recs : set.speaker_records()) {
    std::int64_t n = static_cast<std::int64_t>(recs.size());
    within_total += n * (n - 1) / 2;
  }
  Rng rng(seed);
  if (within_total <= max_pairs) {
    for (const auto& recs : set.speaker_records())
      for (std::size_t a = 0; a < recs.size(); ++a)
        for (std::size_t b = a + 1; b < recs.size(); ++b)
          out.within.insert(distance(recs[a], recs[b]));
  } else {
    // Sample speakers proportionally to record count, then a pair inside.
    std::vector<int> eligible;
    for (int s = 0; s < set.num_speakers(); ++s)
      if (set.speaker_records()[s].size() >= 2) eligible.push_back(s);
    for (std::int64_t k = 0; k < max_pairs; ++k) {
      int s = eligible[rng.uniform_int(eligible.size())];
      const auto& recs = set.speaker_records()[s];
      std::size_t a = rng.uniform_int(recs.size()), b;
      do {
        b = rng.uniform_int(recs.size());
      } while (b == a);
      out.within.insert(distance(recs[a], recs[b]));
    }
  }

  // Between: cross-speaker pairs.
  std::int64_t n_rec = set.size();
  std::int64_t between_total = n_rec * (n_rec - 1) / 2 - within_total;
  if (between_total <= max_pairs) {
    for (int i = 0; i < set.size(); ++i)
      for (int j = i + 1; j < set.size(); ++j)
        if (set.speaker_index_of_record(i) != set.speaker_index_of_record(j))
          out.between.insert(distance(i, j));
  } else {
    for (std::int64_t k = 0; k < max_pairs; ++k) {
      int i, j;
      do {
        i = static_cast<int>(rng.uniform_int(n_rec));
        j = static_cast<int>(rng.uniform_int(n_rec));
      } while (i == j ||
               set.speaker_index_of_record(i) == set.speaker_index_of_record(j));
      out.between.insert(distance(i, j));
    }
  }
  return out;
}

namespace {

struct Scatters {
  SymMatrix within;
  SymMatrix between;
};

Scatters class_scatters(const EmbeddingSet& set) {
  const int d = set.dim();
  const int n_speakers = set.num_speakers();

  Vec global(d, 0.0);
  for (const Embedding& e : set.records()) vec_axpy(1.0, e.vec, &global);
  for (double& v : global) v /= set.size();

  Scatters sc{SymMatrix(d), SymMatrix(d)};
  for (int s = 0; s < n_speakers; ++s) {
    const auto& recs = set.speaker_records()[s];
    Vec smean(d, 0.0);
    for (int r : recs) vec_axpy(1.0, set.record(r).vec, &smean);
    for (double& v : smean) v /= static_cast<double>(recs.size());
    for (int r : recs)
      sc.within.add_outer(vec_sub(set.record(r).vec, smean), 1.0);
    sc.between.add_outer(vec_sub(smean, global), 1.0);
  }
  sc.within.scale(1.0 / set.size());
  sc.between.scale(1.0 / n_speakers);
  return sc;
}

}  // namespace

Matrix lda_projection(const EmbeddingSet& set, int out_dim) {
  if (!set.labeled()) throw DataError("lda_projection: set is unlabeled");
  int max_dim = std::min(set.dim(), set.num_speakers() - 1);
  if (out_dim < 1 || out_dim > max_dim)
    throw DataError("lda_projection: out_dim must be in [1, min(D, n_speakers - 1)]");

  Scatters sc = class_scatters(set);
  SimulDiag sd = simultaneous_diagonalize(sc.within, sc.between);
  Matrix proj(set.dim(), out_dim);
  for (int i = 0; i < set.dim(); ++i)
    for (int k = 0; k < out_dim; ++k) proj(i, k) = sd.u(i, k);
  return proj;
}

SkewKurt skewness_kurtosis(const EmbeddingSet& set, const Matrix& projection) {
  if (!set.labeled()) throw DataError("skewness_kurtosis: set is unlabeled");
  if (projection.rows() != set.dim())
    throw DataError("skewness_kurtosis: projection rows must match set dimension");
  for (const auto& recs : set.speaker_records())
    if (recs.size() < 2)
      throw DataError("skewness_kurtosis: every speaker needs at least two utterances");

  const int k = projection.cols();
  Matrix proj_t = transpose(projection);

  // Pool per-speaker-centered projections.
  std::vector<Vec> deviations;
  deviations.reserve(set.size());
  for (const auto& recs : set.speaker_records()) {
    std::vector<Vec> ys;
    Vec smean(k, 0.0);
    for (int r : recs) {
      Vec y = mat_vec(proj_t, set.record(r).vec);
      vec_axpy(1.0, y, &smean);
      ys.push_back(std::move(y));
    }
    for (double& v : smean) v /= static_cast<double>(recs.size());
    for (Vec& y : ys) deviations.push_back(vec_sub(y, smean));
  }

  const double n = static_cast<double>(deviations.size());
  SkewKurt out;
  out.skewness.resize(k);
  out.excess_kurtosis.resize(k);
  for (int i = 0; i < k; ++i) {
    double m1 = 0.0;
    for (const Vec& d : deviations) m1 += d[i];
    m1 /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const Vec& d : deviations) {
      double c = d[i] - m1;
      double c2 = c * c;
      m2 += c2;
      m3 += c2 * c;
      m4 += c2 * c2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0.0))
      throw NumericError("skewness_kurtosis: zero pooled variance in dimension " +
                         std::to_string(i));
    out.skewness[i] = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis[i] = m4 / (m2 * m2) - 3.0;
  }
  return out;
}

VarianceProfile variance_profile(const PldaModel& model, const EmbeddingSet& test) {
  if (test.dim() != model.dim())
    throw DataError("variance_profile: dimension mismatch");
  if (test.size() < 2)
    throw DataError("variance_profile: need at least two test utterances");

  const int d = model.dim();
  VarianceProfile out;
  out.plda_std.resize(d);
  for (int i = 0; i < d; ++i) out.plda_std[i] = std::sqrt(model.psi()[i] + 1.0);

  std::vector<Vec> pre;
  pre.reserve(test.size());
  for (const Embedding& e : test.records()) pre.push_back(preprocess(model, e.vec));
  MeanCov mc = sample_mean_cov(pre);
  out.test_std.resize(d);
  for (int i = 0; i < d; ++i) out.test_std[i] = std::sqrt(mc.cov(i, i));
  return out;
}

double mismatch_index(const Vec& plda_std, const Vec& test_std) {
  if (plda_std.size() != test_std.size() || plda_std.empty())
    throw DataError("mismatch_index: profile length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < plda_std.size(); ++i) {
    if (!(plda_std[i] > 0.0) || !(test_std[i] > 0.0))
      throw DataError("mismatch_index: profiles must be positive");
    sum += std::abs(std::log(test_std[i] / plda_std[i]));
  }
  return sum / static_cast<double>(plda_std.size());
}

Backend::Kind recommend_backend(double mismatch, double tau) {
  return mismatch <= tau ? Backend::Kind::kCosine : Backend::Kind::kPlda;
}

}  // namespace svkit
