// tests/test_adaptation.cpp
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
#include "svkit/adaptation.hpp"
#include "svkit/synthlab.hpp"
#include "test_util.hpp"

using namespace svkit;
using namespace svkit::testutil;

TEST_CASE("coral_transform is the identity for matching covariances") {
  Rng rng(70);
  SymMatrix c = random_spd(4, &rng);
  Matrix a = coral_transform(c, c);
  CHECK(max_abs_diff(a, Matrix::identity(4)) < 1e-9);
}

TEST_CASE("coral_transform scalar case") {
  Matrix a = coral_transform(SymMatrix::diag({4.0}), SymMatrix::diag({9.0}));
  CHECK(a(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("coral_transform recolors random SPD pairs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(7100 + seed);
    int dim = 1 + static_cast<int>(rng.uniform_int(8));
    SymMatrix c_out = random_spd(dim, &rng);
    SymMatrix c_in = random_spd(dim, &rng);
    Matrix a = coral_transform(c_out, c_in);
    Matrix recolored = a * c_out.full() * transpose(a);
    CHECK(max_abs_diff(recolored, c_in.full()) <= 1e-8 * c_in.max_abs());
  }
}

namespace {

EmbeddingSet gaussian_set(int n, int dim, const SymMatrix& cov, const Vec& mean,
                          std::uint64_t seed, bool labeled = false) {
  Rng rng(seed);
  Matrix l = cholesky(cov);
  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  for (int i = 0; i < n; ++i) {
    Vec z(dim);
    for (double& v : z) v = rng.gauss();
    Vec x = vec_add(mat_vec(l, z), mean);
    std::string id = "e" + std::to_string(i);
    if (labeled) labels[id] = "spk" + std::to_string(i % 5);
    records.push_back({id, std::move(x)});
  }
  return EmbeddingSet::create(dim, std::move(records), std::move(labels));
}

}  // namespace

TEST_CASE("coral_adapt_embeddings fixes mean and covariance to in-domain") {
  Rng rng(72);
  SymMatrix cov_out = random_spd(3, &rng);
  SymMatrix cov_in = random_spd(3, &rng);
  EmbeddingSet out_set = gaussian_set(400, 3, cov_out, {1.0, -1.0, 0.0}, 73);
  EmbeddingSet in_set = gaussian_set(300, 3, cov_in, {0.0, 2.0, 1.0}, 74);

  EmbeddingSet adapted = coral_adapt_embeddings(out_set, in_set);
  MeanCov got = sample_mean_cov(adapted.as_matrix());
  MeanCov want = sample_mean_cov(in_set.as_matrix());
  CHECK(max_abs_diff(got.cov, want.cov) <= 1e-6 * want.cov.max_abs());
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(got.mean[i] - want.mean[i]) <= 1e-9);
}

TEST_CASE("coral_adapt_embeddings of a set onto itself is the identity") {
  Rng rng(75);
  EmbeddingSet set = gaussian_set(200, 3, random_spd(3, &rng), {0.5, 0.0, -0.5}, 76);
  EmbeddingSet adapted = coral_adapt_embeddings(set, set);
  for (int i = 0; i < set.size(); ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(adapted.record(i).vec[j] - set.record(i).vec[j]) <= 1e-9);
}

TEST_CASE("coral_adapt_embeddings undoes a global rescaling") {
  Rng rng(77);
  SymMatrix cov = random_spd(3, &rng);
  EmbeddingSet in_set = gaussian_set(500, 3, cov, {0.0, 0.0, 0.0}, 78);
  std::vector<Vec> doubled;
  for (const Embedding& e : in_set.records()) {
    Vec v(e.vec);
    for (double& x : v) x *= 2.0;
    doubled.push_back(std::move(v));
  }
  EmbeddingSet out_set = in_set.with_vectors(std::move(doubled));
  EmbeddingSet adapted = coral_adapt_embeddings(out_set, in_set);
  MeanCov got = sample_mean_cov(adapted.as_matrix());
  MeanCov want = sample_mean_cov(in_set.as_matrix());
  CHECK(max_abs_diff(got.cov, want.cov) <= 1e-6 * want.cov.max_abs());
}

TEST_CASE("coral_adapt_embeddings preserves ids and labels") {
  Rng rng(79);
  EmbeddingSet out_set =
      gaussian_set(50, 2, random_spd(2, &rng), {0.0, 0.0}, 80, /*labeled=*/true);
  EmbeddingSet in_set = gaussian_set(60, 2, random_spd(2, &rng), {1.0, 1.0}, 81);
  EmbeddingSet adapted = coral_adapt_embeddings(out_set, in_set);
  REQUIRE(adapted.size() == out_set.size());
  for (int i = 0; i < out_set.size(); ++i)
    CHECK(adapted.record(i).id == out_set.record(i).id);
  CHECK(adapted.labels() == out_set.labels());
}

TEST_CASE("coral_plus_covariance leaves a matching pseudo covariance alone") {
  Rng rng(82);
  SymMatrix phi = random_spd(4, &rng);
  for (double alpha : {0.0, 0.5, 1.0}) {
    SymMatrix plus = coral_plus_covariance(phi, phi, alpha);
    CHECK(max_abs_diff(plus, phi) < 1e-8 * phi.max_abs());
  }
}

TEST_CASE("coral_plus_covariance scalar cases") {
  SymMatrix one = SymMatrix::diag({1.0});
  SymMatrix four = SymMatrix::diag({4.0});
  CHECK(coral_plus_covariance(one, four, 1.0)(0, 0) == doctest::Approx(4.0));
  CHECK(coral_plus_covariance(one, four, 0.5)(0, 0) == doctest::Approx(2.5));
  // Shrinkage is blocked by the max().
  CHECK(coral_plus_covariance(four, one, 1.0)(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("coral_plus_covariance never shrinks in the PSD order") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(8300 + seed);
    int dim = 1 + static_cast<int>(rng.uniform_int(8));
    SymMatrix phi = random_spd(dim, &rng);
    SymMatrix pseudo = random_spd(dim, &rng);
    double alpha = rng.uniform();
    SymMatrix plus = coral_plus_covariance(phi, pseudo, alpha);
    EigResult gap = sym_eig(plus - phi);
    CHECK(gap.values.back() >= -1e-9);
  }
}

TEST_CASE("coral_plus_covariance with alpha 1 and no clipping substitutes") {
  Rng rng(84);
  SymMatrix phi = random_spd(5, &rng);
  // pseudo = phi + PSD makes every generalized eigenvalue >= 1.
  SymMatrix pseudo = phi + random_spd(5, &rng, 0.01);
  SymMatrix plus = coral_plus_covariance(phi, pseudo, 1.0);
  CHECK(max_abs_diff(plus, pseudo) <= 1e-8 * pseudo.max_abs());
}

TEST_CASE("reconstruct_covariances inverts the diagonalization") {
  TruthModel truth = default_truth(6, 0.5, 10.0, 85);
  PldaModel model = truth_to_model(truth);
  ModelCovariances covs = reconstruct_covariances(model);
  SimulDiag sd = simultaneous_diagonalize(covs.within, covs.between);
  for (int i = 0; i < 6; ++i)
    CHECK(sd.psi[i] == doctest::Approx(model.psi()[i]).epsilon(1e-8));
}

TEST_CASE("coral_plus_adapt_model is a fixed point on matched data") {
  TruthModel truth = default_truth(6, 0.5, 10.0, 86);
  PldaModel model = truth_to_model(truth);
  EmbeddingSet in_domain = sample_plda(truth, 1000, 5, 87).without_labels();

  AdaptConfig cfg;
  PldaModel adapted = coral_plus_adapt_model(model, in_domain, cfg);
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(adapted.psi()[i] - model.psi()[i]) <= 0.10 * model.psi()[i]);
}

TEST_CASE("coral_plus_adapt_model with zero alphas re-centers only") {
  TruthModel truth = default_truth(5, 0.5, 6.0, 88);
  PldaModel model = truth_to_model(truth);
  EmbeddingSet in_domain = sample_plda(truth, 100, 4, 89, "i").without_labels();

  AdaptConfig cfg;
  cfg.alpha_b = 0.0;
  cfg.alpha_w = 0.0;
  PldaModel adapted = coral_plus_adapt_model(model, in_domain, cfg);
  for (int i = 0; i < 5; ++i)
    CHECK(adapted.psi()[i] == doctest::Approx(model.psi()[i]).epsilon(1e-6));

  MeanCov in_stats = sample_mean_cov(in_domain.as_matrix());
  for (int i = 0; i < 5; ++i)
    CHECK(adapted.mean()[i] == doctest::Approx(in_stats.mean[i]).epsilon(1e-12));
}

TEST_CASE("coral_plus_adapt_model grows psi along an inflated direction") {
  // In-domain data with variance doubled along the model's top-psi
  // direction. When both alphas are equal the inflation cancels out of psi
  // (both covariances grow by the same factor in that direction), so the
  // constructed check interpolates the between covariance only.
  TruthModel truth = default_truth(4, 0.5, 8.0, 90);
  PldaModel model = truth_to_model(truth);
  EmbeddingSet in_domain = sample_plda(truth, 800, 4, 91).without_labels();

  Matrix a = invert(model.a_inv());
  Vec top_dir(4);
  for (int i = 0; i < 4; ++i) top_dir[i] = a(i, 0);
  double norm_sq = dot(top_dir, top_dir);

  std::vector<Vec> inflated;
  for (const Embedding& e : in_domain.records()) {
    Vec centered = vec_sub(e.vec, model.mean());
    double along = dot(centered, top_dir) / norm_sq;
    Vec v = e.vec;
    vec_axpy(along, top_dir, &v);  // doubles the component along top_dir
    inflated.push_back(std::move(v));
  }
  EmbeddingSet shifted = in_domain.with_vectors(std::move(inflated));

  AdaptConfig cfg;
  cfg.alpha_b = 1.0;
  cfg.alpha_w = 0.0;
  PldaModel adapted = coral_plus_adapt_model(model, shifted, cfg);
  CHECK(adapted.psi()[0] > model.psi()[0]);

  // Equal alphas: the common inflation cancels and psi is preserved.
  cfg.alpha_w = 1.0;
  PldaModel balanced = coral_plus_adapt_model(model, shifted, cfg);
  CHECK(balanced.psi()[0] == doctest::Approx(model.psi()[0]).epsilon(0.02));
}

TEST_CASE("adaptation validates inputs") {
  TruthModel truth = default_truth(3, 0.5, 4.0, 92);
  PldaModel model = truth_to_model(truth);
  EmbeddingSet tiny = sample_plda(truth, 1, 1, 93).without_labels();
  CHECK_THROWS_AS(coral_plus_adapt_model(model, tiny), DataError);
  AdaptConfig bad;
  bad.alpha_b = 1.5;
  EmbeddingSet ok = sample_plda(truth, 10, 3, 94).without_labels();
  CHECK_THROWS_AS(coral_plus_adapt_model(model, ok, bad), DataError);
}
