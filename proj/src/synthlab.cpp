// src/synthlab.cpp
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

#include "svkit/synthlab.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "svkit/adaptation.hpp"
#include "svkit/metrics.hpp"
#include "svkit/scoring.hpp"

namespace svkit {

PldaModel truth_to_model(const TruthModel& truth) {
  return PldaModel(truth.mean, invert(truth.a), truth.psi);
}

Matrix random_rotation(int dim, Rng* rng) {
  Matrix q(dim, dim);
  for (int col = 0; col < dim; ++col) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng->gauss();
    // Two Gram-Schmidt passes to keep orthogonality near machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < col; ++prev) {
        double proj = 0.0;
        for (int i = 0; i < dim; ++i) proj += v[i] * q(i, prev);
        for (int i = 0; i < dim; ++i) v[i] -= proj * q(i, prev);
      }
    }
    double n = norm2(v);
    if (n < 1e-12) throw NumericError("random_rotation: degenerate draw");
    for (int i = 0; i < dim; ++i) q(i, col) = v[i] / n;
  }
  return q;
}

TruthModel default_truth(int dim, double psi_min, double psi_max,
                         std::uint64_t seed, double scale_min, double scale_max) {
  if (dim < 1) throw DataError("default_truth: dim must be >= 1");
  if (!(psi_min > 0.0) || !(psi_max >= psi_min))
    throw DataError("default_truth: need 0 < psi_min <= psi_max");
  TruthModel truth;
  truth.mean.assign(dim, 0.0);
  truth.psi.resize(dim);
  for (int i = 0; i < dim; ++i) {
    double t = dim == 1 ? 0.0 : static_cast<double>(i) / (dim - 1);
    // Descending from psi_max to psi_min.
    truth.psi[i] = std::exp(std::log(psi_max) + t * (std::log(psi_min) - std::log(psi_max)));
  }
  Rng rng(seed);
  Matrix r = random_rotation(dim, &rng);
  truth.a = Matrix(dim, dim);
  for (int j = 0; j < dim; ++j) {
    double s = std::exp(rng.uniform(std::log(scale_min), std::log(scale_max)));
    for (int i = 0; i < dim; ++i) truth.a(i, j) = r(i, j) * s;
  }
  return truth;
}

EmbeddingSet sample_plda(const TruthModel& truth, int n_speakers, int n_sessions,
                         std::uint64_t seed, const std::string& prefix,
                         const std::string& domain) {
  if (n_speakers < 1 || n_sessions < 1)
    throw DataError("sample_plda: need at least one speaker and one session");
  const int d = truth.dim();
  Rng rng(seed);
  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  records.reserve(static_cast<std::size_t>(n_speakers) * n_sessions);

  Vec sqrt_psi(d);
  for (int i = 0; i < d; ++i) sqrt_psi[i] = std::sqrt(truth.psi[i]);

  for (int s = 0; s < n_speakers; ++s) {
    std::string spk = prefix + std::to_string(s);
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = sqrt_psi[i] * rng.gauss();
    for (int j = 0; j < n_sessions; ++j) {
      Vec u(d);
      for (int i = 0; i < d; ++i) u[i] = v[i] + rng.gauss();
      Vec x = vec_add(mat_vec(truth.a, u), truth.mean);
      std::string id = spk + "_" + std::to_string(j);
      labels[id] = spk;
      records.push_back({std::move(id), std::move(x)});
    }
  }
  return EmbeddingSet::create(d, std::move(records), std::move(labels), domain);
}

EmbeddingSet apply_domain_shift(const EmbeddingSet& set, const DomainSpec& spec) {
  const int d = set.dim();
  if (!spec.mean_shift.empty() && static_cast<int>(spec.mean_shift.size()) != d)
    throw DataError("apply_domain_shift: mean_shift dimension mismatch");
  if (!spec.scale.empty()) {
    if (static_cast<int>(spec.scale.size()) != d)
      throw DataError("apply_domain_shift: scale dimension mismatch");
    for (double s : spec.scale)
      if (!(s > 0.0)) throw DataError("apply_domain_shift: scale entries must be positive");
  }
  if (spec.rotation) {
    if (spec.rotation->rows() != d || spec.rotation->cols() != d)
      throw DataError("apply_domain_shift: rotation dimension mismatch");
    // Orthogonality within 1e-10.
    Matrix gram = transpose(*spec.rotation) * (*spec.rotation);
    gram -= Matrix::identity(d);
    if (gram.max_abs() > 1e-10)
      throw DataError("apply_domain_shift: rotation is not orthogonal");
  }

  std::vector<Vec> shifted;
  shifted.reserve(set.size());
  for (const Embedding& e : set.records()) {
    Vec x = spec.rotation ? mat_vec(*spec.rotation, e.vec) : e.vec;
    if (!spec.scale.empty())
      for (int i = 0; i < d; ++i) x[i] *= spec.scale[i];
    if (!spec.mean_shift.empty())
      for (int i = 0; i < d; ++i) x[i] += spec.mean_shift[i];
    switch (spec.nonlinearity) {
      case Nonlinearity::kNone:
        break;
      case Nonlinearity::kRelu:
        for (double& v : x) v = std::max(v, 0.0);
        break;
      case Nonlinearity::kShiftedRelu:
        for (double& v : x) v = std::max(v - spec.offset, 0.0) + spec.offset;
        break;
    }
    shifted.push_back(std::move(x));
  }
  return set.with_vectors(std::move(shifted));
}

DomainSpec expand_domain(const DomainShiftParams& params, int dim) {
  DomainSpec spec;
  Rng rng(params.seed);
  if (params.rotate) spec.rotation = random_rotation(dim, &rng);
  if (params.scale_min > 0.0 && params.scale_max > 0.0) {
    spec.scale.resize(dim);
    for (int i = 0; i < dim; ++i)
      spec.scale[i] =
          std::exp(rng.uniform(std::log(params.scale_min), std::log(params.scale_max)));
  } else if (params.scale_const != 1.0) {
    if (!(params.scale_const > 0.0))
      throw DataError("expand_domain: scale must be positive");
    spec.scale.assign(dim, params.scale_const);
  }
  if (params.shift_norm != 0.0 || params.shift_const != 0.0) {
    spec.mean_shift.assign(dim, params.shift_const);
    if (params.shift_norm != 0.0) {
      Vec dir(dim);
      for (int i = 0; i < dim; ++i) dir[i] = rng.gauss();
      double n = norm2(dir);
      for (int i = 0; i < dim; ++i)
        spec.mean_shift[i] += dir[i] / n * params.shift_norm;
    }
  }
  spec.nonlinearity = params.nonlinearity;
  spec.offset = params.offset;
  return spec;
}

TrialList make_trials(const EmbeddingSet& test, std::uint64_t seed) {
  if (!test.labeled()) throw DataError("make_trials: test set must be labeled");
  if (test.num_speakers() < 2)
    throw DataError("make_trials: need at least two speakers");

  std::vector<Trial> trials;
  for (const auto& recs : test.speaker_records())
    for (std::size_t a = 0; a < recs.size(); ++a)
      for (std::size_t b = a + 1; b < recs.size(); ++b)
        trials.push_back({test.record(recs[a]).id, test.record(recs[b]).id,
                          TrialKey::kTarget});

  const std::size_t n_targets = trials.size();
  Rng rng(seed);
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t guard = 0;
  while (seen.size() < n_targets) {
    if (++guard > 200 * n_targets + 1000)
      throw DataError("make_trials: unable to draw enough nontarget pairs");
    int i = static_cast<int>(rng.uniform_int(test.size()));
    int j = static_cast<int>(rng.uniform_int(test.size()));
    if (test.speaker_index_of_record(i) == test.speaker_index_of_record(j))
      continue;
    auto pair = std::make_pair(test.record(i).id, test.record(j).id);
    if (!seen.insert(pair).second) continue;
    trials.push_back({pair.first, pair.second, TrialKey::kNontarget});
  }
  return TrialList::create(std::move(trials));
}

namespace {

EmbeddingSet sample_domain(const TruthModel& truth, const DomainPlan& plan,
                           const std::string& prefix) {
  EmbeddingSet raw = sample_plda(truth, plan.speakers, plan.sessions, plan.seed,
                                 prefix, plan.tag);
  return apply_domain_shift(raw, expand_domain(plan.shift, truth.dim()));
}

EmbeddingSet merge_sets(const std::vector<EmbeddingSet>& sets) {
  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  for (const EmbeddingSet& s : sets) {
    for (const Embedding& e : s.records()) {
      records.push_back(e);
      labels[e.id] = s.labels().at(e.id);
    }
  }
  return EmbeddingSet::create(sets.front().dim(), std::move(records),
                              std::move(labels));
}

}  // namespace

std::vector<CellResult> run_condition(const ExperimentPlan& plan) {
  if (plan.train.empty()) throw DataError("run_condition: no training domain");
  TruthModel truth = default_truth(plan.truth.dim, plan.truth.psi_min,
                                   plan.truth.psi_max, plan.truth.seed,
                                   plan.truth.scale_min, plan.truth.scale_max);

  // Speaker prefixes keep training, test, and adaptation speakers disjoint.
  std::vector<EmbeddingSet> train_parts;
  for (std::size_t k = 0; k < plan.train.size(); ++k)
    train_parts.push_back(
        sample_domain(truth, plan.train[k], "d" + std::to_string(k) + "s"));
  EmbeddingSet train = merge_sets(train_parts);
  EmbeddingSet test = sample_domain(truth, plan.test, "t");

  DomainPlan adapt_plan;
  if (plan.adapt) {
    adapt_plan = *plan.adapt;
  } else {
    adapt_plan = plan.test;
    adapt_plan.seed = plan.test.seed + 1;
  }
  EmbeddingSet adapt_set = sample_domain(truth, adapt_plan, "a").without_labels();

  TrialList trials = make_trials(test, plan.trial_seed);

  std::optional<PldaModel> fitted;
  for (const std::string& b : plan.backends)
    if (b == "plda") {
      PldaFitConfig cfg;
      cfg.em_iters = plan.em_iters;
      cfg.tol = plan.tol;
      fitted = fit_plda(train, cfg);
    }

  auto evaluate = [&](const Backend& backend, const std::string& name,
                      const std::string& adaptation) {
    ScoreSet scores = score_trials(backend, test, test, trials);
    LabeledScores labeled = partition_scores(scores, trials);
    CellResult cell;
    cell.backend = name;
    cell.adaptation = adaptation;
    cell.eer = eer(labeled);
    cell.min_dcf = min_dcf(labeled, plan.p_target);
    cell.min_cp = min_cprimary(labeled);
    return cell;
  };

  std::vector<CellResult> results;
  for (const std::string& b : plan.backends) {
    if (b == "cos") {
      results.push_back(evaluate(Backend::cosine(), "cos", "none"));
    } else if (b == "plda") {
      for (const std::string& mode : plan.adaptations) {
        if (mode == "none") {
          results.push_back(evaluate(Backend::plda(*fitted), "plda", "none"));
        } else if (mode == "coral") {
          PldaModel adapted = coral_adapt_model(*fitted, adapt_set);
          results.push_back(evaluate(Backend::plda(std::move(adapted)), "plda", "coral"));
        } else if (mode == "coral+") {
          AdaptConfig cfg;
          cfg.alpha_b = plan.alpha_b;
          cfg.alpha_w = plan.alpha_w;
          PldaModel adapted = coral_plus_adapt_model(*fitted, adapt_set, cfg);
          results.push_back(evaluate(Backend::plda(std::move(adapted)), "plda", "coral+"));
        } else {
          throw DataError("run_condition: unknown adaptation '" + mode + "'");
        }
      }
    } else {
      throw DataError("run_condition: unknown backend '" + b + "'");
    }
  }
  return results;
}

}  // namespace svkit
