// include/svkit/scoring.hpp
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

#ifndef SVKIT_SCORING_HPP_
#define SVKIT_SCORING_HPP_

#include <optional>

#include "svkit/plda.hpp"
#include "svkit/types.hpp"

namespace svkit {

// Cosine similarity of two nonzero vectors: dot product after length
// normalization, in [-1, 1] and invariant to positive rescaling of either
// input.
double cosine_score(const Vec& x1, const Vec& x2);

// Back-end selector: cosine needs no model, PLDA carries one.
struct Backend {
  enum class Kind { kCosine, kPlda };

  Kind kind = Kind::kCosine;
  std::optional<PldaModel> model;

  static Backend cosine() { return Backend{}; }
  static Backend plda(PldaModel m) {
    Backend b;
    b.kind = Kind::kPlda;
    b.model = std::move(m);
    return b;
  }
};

// Scores every trial in the list. A trial id is resolved first as an
// utterance id, then as a speaker label; a label matching several
// enrollment utterances mean-pools the raw embeddings before scoring
// (before normalization for cosine, before preprocessing for PLDA).
// Deterministic and independent of num_threads.
ScoreSet score_trials(const Backend& backend, const EmbeddingSet& enroll,
                      const EmbeddingSet& test, const TrialList& trials,
                      int num_threads = 1);

}  // namespace svkit

#endif  // SVKIT_SCORING_HPP_
