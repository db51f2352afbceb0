// include/svkit/metrics.hpp
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

#ifndef SVKIT_METRICS_HPP_
#define SVKIT_METRICS_HPP_

#include "svkit/types.hpp"

namespace svkit {

struct LabeledScores {
  Vec target_scores;
  Vec nontarget_scores;
};

// Joins a score set against a keyed trial list. Every target/nontarget
// trial must have exactly one score; unknown keys and unmatched scores are
// rejected.
LabeledScores partition_scores(const ScoreSet& scores, const TrialList& trials);

struct DetPoint {
  double threshold = 0.0;
  double p_miss = 0.0;
  double p_fa = 0.0;
};

// Detection staircase under the accept-iff-score>=threshold convention:
// one operating point per distinct score (ascending) plus a final
// reject-all point at +infinity. P_miss is non-decreasing and P_fa
// non-increasing along the list.
std::vector<DetPoint> det_points(const LabeledScores& s);

// Equal error rate, linearly interpolated between the two staircase points
// that bracket the P_miss = P_fa crossing.
double eer(const LabeledScores& s);

// Minimum normalized detection cost:
//   min over thresholds of
//     (c_miss p_target P_miss + c_fa (1 - p_target) P_fa)
//       / min(c_miss p_target, c_fa (1 - p_target)).
double min_dcf(const LabeledScores& s, double p_target, double c_miss = 1.0,
               double c_fa = 1.0);

// Mean of the normalized minimum costs at p_target = 0.01 and 0.005 with
// unit costs, each minimized at its own threshold.
double min_cprimary(const LabeledScores& s);

}  // namespace svkit

#endif  // SVKIT_METRICS_HPP_
