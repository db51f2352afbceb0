// src/metrics.cpp
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

#include "svkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace svkit {

LabeledScores partition_scores(const ScoreSet& scores, const TrialList& trials) {
  std::map<std::pair<std::string, std::string>, double> lookup;
  for (const ScoreEntry& e : scores.entries())
    lookup[{e.enroll_id, e.test_id}] = e.score;

  LabeledScores out;
  std::size_t used = 0;
  for (const Trial& t : trials.trials()) {
    if (t.key == TrialKey::kUnknown)
      throw DataError("partition_scores: trial (" + t.enroll_id + ", " +
                      t.test_id + ") has no target/nontarget key");
    auto it = lookup.find({t.enroll_id, t.test_id});
    if (it == lookup.end())
      throw DataError("partition_scores: no score for trial (" + t.enroll_id +
                      ", " + t.test_id + ")");
    ++used;
    if (t.key == TrialKey::kTarget)
      out.target_scores.push_back(it->second);
    else
      out.nontarget_scores.push_back(it->second);
  }
  if (used != lookup.size())
    throw DataError("partition_scores: score set has entries not in the trial list");
  return out;
}

namespace {

void check_nonempty(const LabeledScores& s) {
  if (s.target_scores.empty() || s.nontarget_scores.empty())
    throw DataError("metrics: need at least one target and one nontarget score");
  for (double v : s.target_scores)
    if (!std::isfinite(v)) throw DataError("metrics: non-finite target score");
  for (double v : s.nontarget_scores)
    if (!std::isfinite(v)) throw DataError("metrics: non-finite nontarget score");
}

}  // namespace

std::vector<DetPoint> det_points(const LabeledScores& s) {
  check_nonempty(s);
  Vec tgt(s.target_scores), non(s.nontarget_scores);
  std::sort(tgt.begin(), tgt.end());
  std::sort(non.begin(), non.end());

  Vec thresholds;
  thresholds.reserve(tgt.size() + non.size() + 1);
  std::merge(tgt.begin(), tgt.end(), non.begin(), non.end(),
             std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  const double n_tgt = static_cast<double>(tgt.size());
  const double n_non = static_cast<double>(non.size());
  std::vector<DetPoint> points;
  points.reserve(thresholds.size() + 1);
  std::size_t ti = 0, ni = 0;  // counts strictly below the current threshold
  for (double thr : thresholds) {
    while (ti < tgt.size() && tgt[ti] < thr) ++ti;
    while (ni < non.size() && non[ni] < thr) ++ni;
    points.push_back({thr, static_cast<double>(ti) / n_tgt,
                      (n_non - static_cast<double>(ni)) / n_non});
  }
  points.push_back({std::numeric_limits<double>::infinity(), 1.0, 0.0});
  return points;
}

double eer(const LabeledScores& s) {
  std::vector<DetPoint> points = det_points(s);
  // p_miss - p_fa is non-decreasing along the staircase, starting at -1 and
  // ending at +1; interpolate at the first sign change.
  for (std::size_t k = 0; k < points.size(); ++k) {
    double d = points[k].p_miss - points[k].p_fa;
    if (d == 0.0) return points[k].p_miss;
    if (d > 0.0) {
      const DetPoint& lo = points[k - 1];
      const DetPoint& hi = points[k];
      double t = (lo.p_fa - lo.p_miss) /
                 ((hi.p_miss - lo.p_miss) - (hi.p_fa - lo.p_fa));
      return lo.p_miss + t * (hi.p_miss - lo.p_miss);
    }
  }
  throw NumericError("eer: no crossing found");  // unreachable for valid input
}

double min_dcf(const LabeledScores& s, double p_target, double c_miss,
               double c_fa) {
  if (!(p_target > 0.0 && p_target < 1.0))
    throw DataError("min_dcf: p_target must be in (0, 1)");
  if (!(c_miss > 0.0 && c_fa > 0.0))
    throw DataError("min_dcf: costs must be positive");
  std::vector<DetPoint> points = det_points(s);
  double denom = std::min(c_miss * p_target, c_fa * (1.0 - p_target));
  double best = std::numeric_limits<double>::infinity();
  for (const DetPoint& p : points) {
    double cost =
        (c_miss * p_target * p.p_miss + c_fa * (1.0 - p_target) * p.p_fa) / denom;
    best = std::min(best, cost);
  }
  return best;
}

double min_cprimary(const LabeledScores& s) {
  return 0.5 * (min_dcf(s, 0.01, 1.0, 1.0) + min_dcf(s, 0.005, 1.0, 1.0));
}

}  // namespace svkit
