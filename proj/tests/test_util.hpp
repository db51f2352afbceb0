// tests/test_util.hpp
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
//
// Shared helpers for the test and acceptance suites. The metric "oracle"
// here recomputes operating points by direct O(n^2) counting over an
// explicit threshold enumeration; it must stay independent of the
// sort-and-scan implementation in src/metrics.cpp.

#ifndef SVKIT_TESTS_TEST_UTIL_HPP_
#define SVKIT_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "svkit/metrics.hpp"
#include "svkit/numlin.hpp"

namespace svkit::testutil {

// Random symmetric positive-definite matrix: G G^T + ridge I for a random
// Gaussian G.
inline SymMatrix random_spd(int dim, Rng* rng, double ridge = 0.1) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng->gauss();
  SymMatrix s = congruence_t(g, SymMatrix::identity(dim));
  for (int i = 0; i < dim; ++i) s.add(i, i, ridge);
  return s;
}

inline SymMatrix random_symmetric(int dim, Rng* rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng->gauss();
  return SymMatrix::from(g);
}

// max |A - B| entrywise.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  return max_abs_diff(a.full(), b.full());
}

struct BruteOperatingPoint {
  double threshold;
  double p_miss;
  double p_fa;
};

// Every distinct score plus a reject-all threshold, each evaluated by
// direct counting under the accept-iff-score>=threshold convention.
inline std::vector<BruteOperatingPoint> brute_operating_points(const LabeledScores& s) {
  std::vector<double> thresholds(s.target_scores);
  thresholds.insert(thresholds.end(), s.nontarget_scores.begin(),
                    s.nontarget_scores.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  std::vector<BruteOperatingPoint> points;
  for (double thr : thresholds) {
    std::size_t misses = 0, fas = 0;
    for (double v : s.target_scores)
      if (v < thr) ++misses;
    for (double v : s.nontarget_scores)
      if (v >= thr) ++fas;
    points.push_back({thr,
                      static_cast<double>(misses) / s.target_scores.size(),
                      static_cast<double>(fas) / s.nontarget_scores.size()});
  }
  return points;
}

inline double brute_eer(const LabeledScores& s) {
  std::vector<BruteOperatingPoint> points = brute_operating_points(s);
  for (std::size_t k = 0; k < points.size(); ++k) {
    double d = points[k].p_miss - points[k].p_fa;
    if (d == 0.0) return points[k].p_miss;
    if (d > 0.0) {
      const BruteOperatingPoint& lo = points[k - 1];
      const BruteOperatingPoint& hi = points[k];
      double t = (lo.p_fa - lo.p_miss) /
                 ((hi.p_miss - lo.p_miss) - (hi.p_fa - lo.p_fa));
      return lo.p_miss + t * (hi.p_miss - lo.p_miss);
    }
  }
  return 1.0;
}

inline double brute_min_dcf(const LabeledScores& s, double p_target,
                            double c_miss = 1.0, double c_fa = 1.0) {
  double denom = std::min(c_miss * p_target, c_fa * (1.0 - p_target));
  double best = std::numeric_limits<double>::infinity();
  for (const BruteOperatingPoint& p : brute_operating_points(s)) {
    double cost =
        (c_miss * p_target * p.p_miss + c_fa * (1.0 - p_target) * p.p_fa) / denom;
    best = std::min(best, cost);
  }
  return best;
}

inline LabeledScores random_scores(int n_target, int n_nontarget, Rng* rng,
                                   double separation = 0.5) {
  LabeledScores s;
  for (int i = 0; i < n_target; ++i)
    s.target_scores.push_back(rng->gauss() + separation);
  for (int i = 0; i < n_nontarget; ++i) s.nontarget_scores.push_back(rng->gauss());
  return s;
}

}  // namespace svkit::testutil

#endif  // SVKIT_TESTS_TEST_UTIL_HPP_
