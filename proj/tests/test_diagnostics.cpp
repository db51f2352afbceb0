// tests/test_diagnostics.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "svkit/diagnostics.hpp"
#include "svkit/synthlab.hpp"

using namespace svkit;

namespace {

// Labeled set with within-class deviations drawn by `draw`, several
// speakers, random speaker means.
template <typename Draw>
EmbeddingSet deviation_set(int n_speakers, int per_speaker, int dim,
                           std::uint64_t seed, Draw draw) {
  Rng rng(seed);
  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  for (int s = 0; s < n_speakers; ++s) {
    Vec center(dim);
    for (double& v : center) v = 5.0 * rng.gauss();
    for (int j = 0; j < per_speaker; ++j) {
      Vec x(dim);
      for (int i = 0; i < dim; ++i) x[i] = center[i] + draw(rng);
      std::string id = "s" + std::to_string(s) + "_" + std::to_string(j);
      labels[id] = "s" + std::to_string(s);
      records.push_back({id, std::move(x)});
    }
  }
  return EmbeddingSet::create(dim, std::move(records), std::move(labels));
}

double overlap_fraction(const DistanceHistograms& h) {
  double total_w = static_cast<double>(h.within.total());
  double total_b = static_cast<double>(h.between.total());
  double overlap = 0.0;
  for (int b = 0; b < Histogram::kBins; ++b)
    overlap += std::min(h.within.counts[b] / total_w, h.between.counts[b] / total_b);
  return overlap;
}

}  // namespace

TEST_CASE("distance_histograms on degenerate geometries") {
  // Two speakers: one with identical embeddings, orthogonal across speakers.
  std::vector<Embedding> records = {{"a0", {1.0, 0.0}},
                                    {"a1", {1.0, 0.0}},
                                    {"b0", {0.0, 1.0}},
                                    {"b1", {0.0, 1.0}}};
  std::map<std::string, std::string> labels = {
      {"a0", "a"}, {"a1", "a"}, {"b0", "b"}, {"b1", "b"}};
  EmbeddingSet set = EmbeddingSet::create(2, records, labels);
  DistanceHistograms h = distance_histograms(set);

  CHECK(h.within.total() == 2);   // one pair per speaker
  CHECK(h.within.counts[0] == 2); // distance 0
  CHECK(h.between.total() == 4);
  // Orthogonal unit vectors sit at distance exactly 1 (bin 50).
  CHECK(h.between.counts[50] == 4);
}

TEST_CASE("distance_histograms requires labels") {
  std::vector<Embedding> records = {{"a", {1.0}}, {"b", {2.0}}};
  EmbeddingSet set = EmbeddingSet::create(1, records);
  CHECK_THROWS_AS(distance_histograms(set), DataError);
}

TEST_CASE("compact within-class data overlaps more than separated data") {
  auto tight = [](Rng& rng) { return 0.05 * rng.gauss(); };
  auto loose = [](Rng& rng) { return 3.0 * rng.gauss(); };
  EmbeddingSet separated = deviation_set(8, 20, 8, 100, tight);
  EmbeddingSet compact = deviation_set(8, 20, 8, 101, loose);
  double sep_overlap = overlap_fraction(distance_histograms(separated));
  double cmp_overlap = overlap_fraction(distance_histograms(compact));
  CHECK(cmp_overlap > sep_overlap);
}

TEST_CASE("distance_histograms are invariant to embedding rescaling") {
  EmbeddingSet set = deviation_set(5, 10, 4, 102, [](Rng& r) { return r.gauss(); });
  std::vector<Vec> scaled;
  Rng rng(103);
  for (const Embedding& e : set.records()) {
    Vec v(e.vec);
    double a = 0.1 + 5.0 * rng.uniform();
    for (double& x : v) x *= a;
    scaled.push_back(std::move(v));
  }
  EmbeddingSet set2 = set.with_vectors(std::move(scaled));
  DistanceHistograms h1 = distance_histograms(set);
  DistanceHistograms h2 = distance_histograms(set2);
  CHECK(h1.within.counts == h2.within.counts);
  CHECK(h1.between.counts == h2.between.counts);
}

TEST_CASE("distance_histograms pair-sampling cap is deterministic") {
  EmbeddingSet set = deviation_set(10, 30, 4, 104, [](Rng& r) { return r.gauss(); });
  DistanceHistograms h1 = distance_histograms(set, 7, 500);
  DistanceHistograms h2 = distance_histograms(set, 7, 500);
  CHECK(h1.within.counts == h2.within.counts);
  CHECK(h1.between.counts == h2.between.counts);
  CHECK(h1.within.total() == 500);
  CHECK(h1.between.total() == 500);
}

TEST_CASE("lda_projection recovers the separating axis") {
  // Two classes in 2D separated along axis 0, isotropic within-class noise.
  Rng rng(105);
  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  for (int s = 0; s < 2; ++s) {
    for (int j = 0; j < 200; ++j) {
      Vec x = {s == 0 ? -4.0 : 4.0, 0.0};
      x[0] += rng.gauss();
      x[1] += rng.gauss();
      std::string id = "c" + std::to_string(s) + "_" + std::to_string(j);
      labels[id] = "c" + std::to_string(s);
      records.push_back({id, std::move(x)});
    }
  }
  EmbeddingSet set = EmbeddingSet::create(2, records, labels);
  Matrix proj = lda_projection(set, 1);
  Vec axis = {proj(0, 0), proj(1, 0)};
  double cos_angle = std::abs(axis[0]) / norm2(axis);
  CHECK(cos_angle > 0.99);
}

TEST_CASE("lda_projection with out_dim = D on whitened data is invertible") {
  TruthModel truth = default_truth(4, 0.5, 6.0, 106);
  EmbeddingSet set = sample_plda(truth, 30, 6, 107);
  Matrix proj = lda_projection(set, 4);
  CHECK_NOTHROW(invert(proj));  // full rank
}

TEST_CASE("lda_projection validates out_dim") {
  TruthModel truth = default_truth(6, 0.5, 6.0, 108);
  EmbeddingSet set = sample_plda(truth, 4, 5, 109);  // 4 speakers -> max 3
  CHECK_THROWS_AS(lda_projection(set, 4), DataError);
  CHECK_THROWS_AS(lda_projection(set, 0), DataError);
  CHECK_NOTHROW(lda_projection(set, 3));
}

TEST_CASE("skewness_kurtosis matches known distribution moments") {
  const int n_speakers = 10, per_speaker = 10000, dim = 2;

  SUBCASE("gaussian deviations") {
    EmbeddingSet set = deviation_set(n_speakers, per_speaker, dim, 110,
                                     [](Rng& r) { return r.gauss(); });
    SkewKurt sk = skewness_kurtosis(set, Matrix::identity(dim));
    for (int i = 0; i < dim; ++i) {
      CHECK(std::abs(sk.skewness[i]) < 0.05);
      CHECK(std::abs(sk.excess_kurtosis[i]) < 0.1);
    }
  }
  SUBCASE("centered exponential deviations: skew 2, excess kurtosis 6") {
    EmbeddingSet set =
        deviation_set(n_speakers, per_speaker, dim, 111,
                      [](Rng& r) { return -std::log1p(-r.uniform()) - 1.0; });
    SkewKurt sk = skewness_kurtosis(set, Matrix::identity(dim));
    for (int i = 0; i < dim; ++i) {
      CHECK(sk.skewness[i] == doctest::Approx(2.0).epsilon(0.1));
      CHECK(sk.excess_kurtosis[i] == doctest::Approx(6.0).epsilon(0.15));
    }
  }
  SUBCASE("uniform deviations: skew 0, excess kurtosis -1.2") {
    EmbeddingSet set = deviation_set(n_speakers, per_speaker, dim, 112,
                                     [](Rng& r) { return r.uniform() - 0.5; });
    SkewKurt sk = skewness_kurtosis(set, Matrix::identity(dim));
    for (int i = 0; i < dim; ++i) {
      CHECK(std::abs(sk.skewness[i]) < 0.05);
      CHECK(sk.excess_kurtosis[i] == doctest::Approx(-1.2).epsilon(0.05));
    }
  }
}

TEST_CASE("skewness_kurtosis ignores per-speaker mean shifts") {
  EmbeddingSet base = deviation_set(6, 500, 3, 113, [](Rng& r) { return r.gauss(); });
  // Shift every speaker by a different offset; deviations are unchanged.
  Rng rng(114);
  std::vector<Vec> shifted;
  Vec offsets(base.num_speakers());
  for (double& o : offsets) o = 100.0 * rng.gauss();
  for (int i = 0; i < base.size(); ++i) {
    Vec v(base.record(i).vec);
    for (double& x : v) x += offsets[base.speaker_index_of_record(i)];
    shifted.push_back(std::move(v));
  }
  EmbeddingSet moved = base.with_vectors(std::move(shifted));
  SkewKurt a = skewness_kurtosis(base, Matrix::identity(3));
  SkewKurt b = skewness_kurtosis(moved, Matrix::identity(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(a.skewness[i] == doctest::Approx(b.skewness[i]).epsilon(1e-6));
    CHECK(a.excess_kurtosis[i] == doctest::Approx(b.excess_kurtosis[i]).epsilon(1e-6));
  }
}

TEST_CASE("skewness_kurtosis rejects singleton speakers and zero variance") {
  std::vector<Embedding> records = {{"a0", {1.0}}, {"b0", {2.0}}, {"b1", {3.0}}};
  std::map<std::string, std::string> labels = {{"a0", "a"}, {"b0", "b"}, {"b1", "b"}};
  EmbeddingSet set = EmbeddingSet::create(1, records, labels);
  CHECK_THROWS_AS(skewness_kurtosis(set, Matrix::identity(1)), DataError);

  std::vector<Embedding> flat = {{"a0", {1.0}}, {"a1", {1.0}},
                                 {"b0", {5.0}}, {"b1", {5.0}}};
  std::map<std::string, std::string> flat_labels = {
      {"a0", "a"}, {"a1", "a"}, {"b0", "b"}, {"b1", "b"}};
  EmbeddingSet flat_set = EmbeddingSet::create(1, flat, flat_labels);
  CHECK_THROWS_AS(skewness_kurtosis(flat_set, Matrix::identity(1)), NumericError);
}

TEST_CASE("variance_profile is near one on model-matched data") {
  // Single-session speakers make the 5000 draws independent; multi-session
  // sampling shares speaker centers and inflates the estimator variance.
  TruthModel truth = default_truth(6, 0.5, 10.0, 115);
  PldaModel model = truth_to_model(truth);
  EmbeddingSet test = sample_plda(truth, 5000, 1, 116, "t");
  VarianceProfile vp = variance_profile(model, test);
  for (int i = 0; i < 6; ++i) {
    double ratio = vp.test_std[i] / vp.plda_std[i];
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
  }
}

TEST_CASE("variance_profile deviation shrinks with more data") {
  TruthModel truth = default_truth(6, 0.5, 10.0, 117);
  PldaModel model = truth_to_model(truth);
  auto max_dev = [&](int n_speakers) {
    EmbeddingSet test = sample_plda(truth, n_speakers, 5, 118, "t");
    VarianceProfile vp = variance_profile(model, test);
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
      worst = std::max(worst, std::abs(vp.test_std[i] / vp.plda_std[i] - 1.0));
    return worst;
  };
  CHECK(max_dev(1000) < max_dev(100));
}

TEST_CASE("variance_profile doubles with doubled test data") {
  TruthModel truth = default_truth(5, 0.5, 8.0, 119);
  truth.mean.assign(5, 0.0);
  PldaModel model = truth_to_model(truth);
  EmbeddingSet test = sample_plda(truth, 500, 4, 120, "t");
  std::vector<Vec> doubled;
  for (const Embedding& e : test.records()) {
    Vec v(e.vec);
    for (double& x : v) x *= 2.0;
    doubled.push_back(std::move(v));
  }
  VarianceProfile base = variance_profile(model, test);
  VarianceProfile big = variance_profile(model, test.with_vectors(std::move(doubled)));
  for (int i = 0; i < 5; ++i)
    CHECK(big.test_std[i] / base.test_std[i] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("variance_profile with zero psi reports unit model std") {
  PldaModel model(Vec(3, 0.0), Matrix::identity(3), Vec(3, 0.0));
  TruthModel truth{Vec(3, 0.0), Matrix::identity(3), Vec(3, 0.0)};
  EmbeddingSet test = sample_plda(truth, 100, 3, 121, "t");
  VarianceProfile vp = variance_profile(model, test);
  for (double v : vp.plda_std) CHECK(v == 1.0);
}

TEST_CASE("mismatch_index closed forms") {
  CHECK(mismatch_index({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(mismatch_index({1.0, 1.0}, {2.0, 2.0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(mismatch_index({1.0, 1.0}, {2.0, 1.0}) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(mismatch_index({1.0, 0.0}, {1.0, 1.0}), DataError);
  CHECK_THROWS_AS(mismatch_index({1.0}, {1.0, 1.0}), DataError);
}

TEST_CASE("recommend_backend threshold rule") {
  CHECK(recommend_backend(0.0) == Backend::Kind::kCosine);
  CHECK(recommend_backend(0.69, 0.2) == Backend::Kind::kPlda);
  CHECK(recommend_backend(0.2, 0.2) == Backend::Kind::kCosine);  // inclusive
  // Monotone in the index.
  bool seen_plda = false;
  for (double idx : {0.0, 0.1, 0.2, 0.3, 0.5, 1.0}) {
    bool plda = recommend_backend(idx, 0.2) == Backend::Kind::kPlda;
    if (seen_plda) CHECK(plda);
    seen_plda = seen_plda || plda;
  }
}
