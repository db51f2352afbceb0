// include/svkit/diagnostics.hpp
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

#ifndef SVKIT_DIAGNOSTICS_HPP_
#define SVKIT_DIAGNOSTICS_HPP_

#include "svkit/scoring.hpp"

namespace svkit {

// Fixed-range histogram: 100 uniform bins over [0, 2], the range of the
// cosine distance 1 - cos. Out-of-range values (numerical spill) land in
// the edge bins.
struct Histogram {
  static constexpr int kBins = 100;
  static constexpr double kLo = 0.0;
  static constexpr double kHi = 2.0;

  std::vector<std::int64_t> counts = std::vector<std::int64_t>(kBins, 0);

  void insert(double v);
  std::int64_t total() const;
  double bin_lo(int b) const { return kLo + (kHi - kLo) * b / kBins; }
  double bin_hi(int b) const { return kLo + (kHi - kLo) * (b + 1) / kBins; }
};

struct DistanceHistograms {
  Histogram within;
  Histogram between;
};

// Cosine-distance histograms over same-speaker and cross-speaker pairs of a
// labeled set. When a side exceeds max_pairs, pairs are sampled with the
// given seed instead of enumerated.
DistanceHistograms distance_histograms(const EmbeddingSet& set,
                                       std::uint64_t seed = 0,
                                       std::int64_t max_pairs = 1000000);

// Columns are the leading out_dim generalized eigenvectors of the
// (between-scatter, within-scatter) pair, so projected within-class
// covariance is about identity and dimensions are ordered by discriminant
// strength. out_dim must not exceed min(D, n_speakers - 1).
Matrix lda_projection(const EmbeddingSet& set, int out_dim);

struct SkewKurt {
  Vec skewness;
  Vec excess_kurtosis;
};

// Third and fourth standardized moments of the pooled within-class
// deviations (each utterance minus its speaker mean), per projected
// dimension. Gaussian data gives values near zero on both.
SkewKurt skewness_kurtosis(const EmbeddingSet& set, const Matrix& projection);

struct VarianceProfile {
  Vec plda_std;  // sqrt(psi_i + 1), the model's total per-dimension std
  Vec test_std;  // sample std of preprocessed test data per dimension
};

// Per-dimension comparison of the model's marginal std against the test
// data's, in the diagonalized space, ordered by descending psi.
VarianceProfile variance_profile(const PldaModel& model, const EmbeddingSet& test);

// Mean over dimensions of |log(test_std_i / plda_std_i)|; zero iff the
// profiles match.
double mismatch_index(const Vec& plda_std, const Vec& test_std);

// Threshold rule on the mismatch index: at or below tau the profiles are
// close enough that cosine is preferred; above it, PLDA.
Backend::Kind recommend_backend(double mismatch, double tau = 0.2);

struct DiagnosticsReport {
  DistanceHistograms distances;       // empty (zero totals) when unavailable
  Vec skewness;
  Vec excess_kurtosis;
  Vec plda_std;
  Vec test_std;
  double mismatch = 0.0;
  Backend::Kind recommendation = Backend::Kind::kCosine;
  double tau = 0.2;
};

}  // namespace svkit

#endif  // SVKIT_DIAGNOSTICS_HPP_
