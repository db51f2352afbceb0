// src/scoring.cpp
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

#include "svkit/scoring.hpp"

#include <cmath>
#include <map>
#include <thread>

namespace svkit {

double cosine_score(const Vec& x1, const Vec& x2) {
  if (x1.size() != x2.size()) throw DataError("cosine_score: dimension mismatch");
  double n1 = norm2(x1), n2 = norm2(x2);
  if (n1 == 0.0 || n2 == 0.0)
    throw DataError("cosine_score: zero vector");
  double c = dot(x1, x2) / (n1 * n2);
  return std::min(1.0, std::max(-1.0, c));
}

namespace {

// id -> mean-pooled raw embedding. Utterance ids take precedence; a speaker
// label pools all of that speaker's utterances.
Vec resolve(const EmbeddingSet& set, const std::string& id) {
  int idx = set.index_of(id);
  if (idx >= 0) return set.record(idx).vec;
  if (set.labeled()) {
    for (int s = 0; s < set.num_speakers(); ++s) {
      if (set.speaker_names()[s] != id) continue;
      const std::vector<int>& recs = set.speaker_records()[s];
      Vec pooled(set.dim(), 0.0);
      for (int r : recs) vec_axpy(1.0, set.record(r).vec, &pooled);
      for (double& v : pooled) v /= static_cast<double>(recs.size());
      return pooled;
    }
  }
  throw DataError("score_trials: id '" + id + "' not found");
}

}  // namespace

ScoreSet score_trials(const Backend& backend, const EmbeddingSet& enroll,
                      const EmbeddingSet& test, const TrialList& trials,
                      int num_threads) {
  if (backend.kind == Backend::Kind::kPlda) {
    if (!backend.model) throw DataError("score_trials: PLDA backend without model");
    if (backend.model->dim() != enroll.dim())
      throw DataError("score_trials: model dimension does not match embeddings");
  }
  if (enroll.dim() != test.dim())
    throw DataError("score_trials: enroll/test dimension mismatch");

  const int n = trials.size();

  // Resolve and (for PLDA) preprocess each distinct id once, serially, so
  // results cannot depend on scheduling.
  std::map<std::string, Vec> enroll_vecs, test_vecs;
  for (const Trial& t : trials.trials()) {
    if (enroll_vecs.find(t.enroll_id) == enroll_vecs.end()) {
      Vec v = resolve(enroll, t.enroll_id);
      if (backend.kind == Backend::Kind::kPlda) v = preprocess(*backend.model, v);
      enroll_vecs.emplace(t.enroll_id, std::move(v));
    }
    if (test_vecs.find(t.test_id) == test_vecs.end()) {
      Vec v = resolve(test, t.test_id);
      if (backend.kind == Backend::Kind::kPlda) v = preprocess(*backend.model, v);
      test_vecs.emplace(t.test_id, std::move(v));
    }
  }

  std::vector<ScoreEntry> entries(n);
  auto score_range = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const Trial& t = trials.trials()[i];
      const Vec& e = enroll_vecs.at(t.enroll_id);
      const Vec& x = test_vecs.at(t.test_id);
      double score = backend.kind == Backend::Kind::kPlda
                         ? llr_score(*backend.model, e, x)
                         : cosine_score(e, x);
      entries[i] = {t.enroll_id, t.test_id, score};
    }
  };

  int workers = std::max(1, num_threads);
  if (workers == 1 || n < 2) {
    score_range(0, n);
  } else {
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int lo = w * chunk, hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(score_range, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }
  return ScoreSet::create(std::move(entries));
}

}  // namespace svkit
