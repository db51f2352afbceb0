// src/types.cpp
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

#include "svkit/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace svkit {

std::string ValidationReport::joined() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues_.size(); ++i) {
    if (i) os << "; ";
    os << issues_[i];
  }
  return os.str();
}

ValidationReport validate_embedding_set(int dim,
                                        const std::vector<Embedding>& records,
                                        const std::map<std::string, std::string>& labels) {
  ValidationReport report;
  if (dim < 1) report.add("dimension must be at least 1");

  std::set<std::string> seen;
  for (const Embedding& e : records) {
    if (!seen.insert(e.id).second)
      report.add("duplicate id '" + e.id + "'");
    if (static_cast<int>(e.vec.size()) != dim)
      report.add("id '" + e.id + "': dimension " +
                 std::to_string(e.vec.size()) + " does not match set dimension " +
                 std::to_string(dim));
    if (!all_finite(e.vec))
      report.add("id '" + e.id + "': non-finite vector entry");
  }

  if (!labels.empty()) {
    for (const auto& [id, spk] : labels) {
      (void)spk;
      if (seen.find(id) == seen.end())
        report.add("label key '" + id + "' does not match any record id");
    }
    for (const Embedding& e : records) {
      if (labels.find(e.id) == labels.end())
        report.add("id '" + e.id + "' is unlabeled in a labeled set");
    }
  }
  return report;
}

ValidationReport validate_embedding_set(const EmbeddingSet& set) {
  return validate_embedding_set(set.dim(), set.records(), set.labels());
}

EmbeddingSet EmbeddingSet::create(int dim, std::vector<Embedding> records,
                                  std::map<std::string, std::string> labels,
                                  std::string domain) {
  ValidationReport report = validate_embedding_set(dim, records, labels);
  if (!report.ok())
    throw DataError("invalid embedding set: " + report.joined());

  EmbeddingSet set;
  set.dim_ = dim;
  set.records_ = std::move(records);
  set.labels_ = std::move(labels);
  set.domain_ = std::move(domain);
  for (int i = 0; i < set.size(); ++i) set.index_[set.records_[i].id] = i;

  set.record_speaker_.assign(set.size(), -1);
  if (!set.labels_.empty()) {
    std::map<std::string, int> speaker_index;
    for (int i = 0; i < set.size(); ++i) {
      const std::string& spk = set.labels_.at(set.records_[i].id);
      auto it = speaker_index.find(spk);
      if (it == speaker_index.end()) {
        it = speaker_index.emplace(spk, static_cast<int>(set.speaker_names_.size())).first;
        set.speaker_names_.push_back(spk);
        set.speaker_records_.emplace_back();
      }
      set.record_speaker_[i] = it->second;
      set.speaker_records_[it->second].push_back(i);
    }
  }
  return set;
}

int EmbeddingSet::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

Matrix EmbeddingSet::as_matrix() const {
  Matrix x(size(), dim_);
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < dim_; ++j) x(i, j) = records_[i].vec[j];
  return x;
}

EmbeddingSet EmbeddingSet::without_labels() const {
  return create(dim_, records_, {}, domain_);
}

EmbeddingSet EmbeddingSet::with_vectors(std::vector<Vec> vectors) const {
  if (static_cast<int>(vectors.size()) != size())
    throw DataError("with_vectors: record count mismatch");
  std::vector<Embedding> recs(records_);
  for (int i = 0; i < size(); ++i) recs[i].vec = std::move(vectors[i]);
  return create(dim_, std::move(recs), labels_, domain_);
}

std::pair<EmbeddingSet, EmbeddingSet> split_by_speaker(const EmbeddingSet& set,
                                                       double fraction,
                                                       std::uint64_t seed) {
  if (!set.labeled()) throw DataError("split_by_speaker: set is unlabeled");
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DataError("split_by_speaker: fraction must be in (0, 1)");

  std::vector<int> order(set.num_speakers());
  for (int i = 0; i < set.num_speakers(); ++i) order[i] = i;
  Rng rng(seed);
  shuffle(&order, &rng);

  int n_first = static_cast<int>(std::floor(fraction * set.num_speakers()));
  std::vector<bool> in_first(set.num_speakers(), false);
  for (int i = 0; i < n_first; ++i) in_first[order[i]] = true;

  std::vector<Embedding> rec_a, rec_b;
  std::map<std::string, std::string> lab_a, lab_b;
  for (int i = 0; i < set.size(); ++i) {
    const Embedding& e = set.record(i);
    if (in_first[set.speaker_index_of_record(i)]) {
      rec_a.push_back(e);
      lab_a[e.id] = set.labels().at(e.id);
    } else {
      rec_b.push_back(e);
      lab_b[e.id] = set.labels().at(e.id);
    }
  }
  return {EmbeddingSet::create(set.dim(), std::move(rec_a), std::move(lab_a), set.domain()),
          EmbeddingSet::create(set.dim(), std::move(rec_b), std::move(lab_b), set.domain())};
}

TrialList TrialList::create(std::vector<Trial> trials) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const Trial& t : trials) {
    if (!seen.insert({t.enroll_id, t.test_id}).second)
      throw DataError("duplicate trial (" + t.enroll_id + ", " + t.test_id + ")");
  }
  TrialList list;
  list.trials_ = std::move(trials);
  return list;
}

ScoreSet ScoreSet::create(std::vector<ScoreEntry> entries) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const ScoreEntry& e : entries) {
    if (!std::isfinite(e.score))
      throw DataError("non-finite score for (" + e.enroll_id + ", " + e.test_id + ")");
    if (!seen.insert({e.enroll_id, e.test_id}).second)
      throw DataError("duplicate score entry (" + e.enroll_id + ", " + e.test_id + ")");
  }
  ScoreSet set;
  set.entries_ = std::move(entries);
  return set;
}

}  // namespace svkit
