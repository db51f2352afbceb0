// include/svkit/types.hpp
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

#ifndef SVKIT_TYPES_HPP_
#define SVKIT_TYPES_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "svkit/matrix.hpp"

namespace svkit {

struct Embedding {
  std::string id;
  Vec vec;
};

class ValidationReport {
 public:
  void add(std::string issue) { issues_.push_back(std::move(issue)); }
  bool ok() const { return issues_.empty(); }
  const std::vector<std::string>& issues() const { return issues_; }
  std::string joined() const;

 private:
  std::vector<std::string> issues_;
};

// Checks the EmbeddingSet invariants on raw components: finite vectors of a
// constant dimension, unique ids, and labels that are either absent or
// complete and referring to existing ids.
ValidationReport validate_embedding_set(int dim,
                                        const std::vector<Embedding>& records,
                                        const std::map<std::string, std::string>& labels);

class EmbeddingSet;

// Re-checks a constructed set; empty iff valid (construction enforces this).
ValidationReport validate_embedding_set(const EmbeddingSet& set);

// Immutable collection of same-dimension embeddings with optional speaker
// labels and an optional domain tag. Construction validates every invariant;
// no partially valid set is observable. Speaker labels are mapped to dense
// indices once, at construction.
class EmbeddingSet {
 public:
  static EmbeddingSet create(int dim, std::vector<Embedding> records,
                             std::map<std::string, std::string> labels = {},
                             std::string domain = "");

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(records_.size()); }
  const std::vector<Embedding>& records() const { return records_; }
  const Embedding& record(int i) const { return records_[i]; }
  const std::string& domain() const { return domain_; }
  bool labeled() const { return !labels_.empty(); }
  const std::map<std::string, std::string>& labels() const { return labels_; }

  // -1 when the id is not present.
  int index_of(const std::string& id) const;

  // Dense speaker grouping; only valid on labeled sets.
  int num_speakers() const { return static_cast<int>(speaker_names_.size()); }
  const std::vector<std::string>& speaker_names() const { return speaker_names_; }
  const std::vector<std::vector<int>>& speaker_records() const { return speaker_records_; }
  int speaker_index_of_record(int record_idx) const { return record_speaker_[record_idx]; }

  Matrix as_matrix() const;
  EmbeddingSet without_labels() const;
  // Same vectors in the same order, new coordinate values.
  EmbeddingSet with_vectors(std::vector<Vec> vectors) const;

 private:
  EmbeddingSet() = default;

  int dim_ = 0;
  std::vector<Embedding> records_;
  std::map<std::string, std::string> labels_;
  std::string domain_;
  std::map<std::string, int> index_;
  std::vector<std::string> speaker_names_;        // first-appearance order
  std::vector<std::vector<int>> speaker_records_; // per speaker, record indices
  std::vector<int> record_speaker_;               // per record, speaker index (-1 unlabeled)
};

// Splits the speakers (not the utterances) of a labeled set into two
// disjoint groups; the first receives floor(fraction * n_speakers) speakers.
// Deterministic in the seed.
std::pair<EmbeddingSet, EmbeddingSet> split_by_speaker(const EmbeddingSet& set,
                                                       double fraction,
                                                       std::uint64_t seed);

enum class TrialKey { kTarget, kNontarget, kUnknown };

struct Trial {
  std::string enroll_id;
  std::string test_id;
  TrialKey key = TrialKey::kUnknown;
};

class TrialList {
 public:
  static TrialList create(std::vector<Trial> trials);
  const std::vector<Trial>& trials() const { return trials_; }
  int size() const { return static_cast<int>(trials_.size()); }

 private:
  TrialList() = default;
  std::vector<Trial> trials_;
};

struct ScoreEntry {
  std::string enroll_id;
  std::string test_id;
  double score = 0.0;
};

class ScoreSet {
 public:
  static ScoreSet create(std::vector<ScoreEntry> entries);
  const std::vector<ScoreEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

 private:
  ScoreSet() = default;
  std::vector<ScoreEntry> entries_;
};

}  // namespace svkit

#endif  // SVKIT_TYPES_HPP_
