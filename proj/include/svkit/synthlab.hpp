// include/svkit/synthlab.hpp
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

#ifndef SVKIT_SYNTHLAB_HPP_
#define SVKIT_SYNTHLAB_HPP_

#include <optional>
#include <string>

#include "svkit/plda.hpp"

namespace svkit {

// Ground-truth generator: x = mean + A u with u ~ N(v, I), v ~ N(0, diag(psi)).
struct TruthModel {
  Vec mean;
  Matrix a;
  Vec psi;  // descending

  int dim() const { return static_cast<int>(mean.size()); }
};

// The same parameters as a scoring model (A^{-1} computed once).
PldaModel truth_to_model(const TruthModel& truth);

// Random orthogonal matrix (Gram-Schmidt of a Gaussian matrix with a
// re-orthogonalization pass).
Matrix random_rotation(int dim, Rng* rng);

// Truth model with log-spaced psi in [psi_min, psi_max] (descending) and
// A = R diag(s), R a random rotation, s log-uniform in [scale_min, scale_max].
TruthModel default_truth(int dim, double psi_min, double psi_max,
                         std::uint64_t seed, double scale_min = 0.8,
                         double scale_max = 1.25);

// Labeled sample: n_sessions utterances for each of n_speakers speakers.
// Ids are "<prefix><speaker>_<session>", labels "<prefix><speaker>".
// Deterministic in the seed.
EmbeddingSet sample_plda(const TruthModel& truth, int n_speakers, int n_sessions,
                         std::uint64_t seed, const std::string& prefix = "s",
                         const std::string& domain = "");

enum class Nonlinearity { kNone, kRelu, kShiftedRelu };

// Parametric domain shift, applied as
//   x' = f(diag(scale) R x + mean_shift)
// with f the configured coordinatewise nonlinearity. shifted_relu clamps
// from below at the offset: max(x - offset, 0) + offset.
struct DomainSpec {
  Vec mean_shift;                   // empty = no shift
  std::optional<Matrix> rotation;   // orthogonal within 1e-10
  Vec scale;                        // empty = no scaling; entries > 0
  Nonlinearity nonlinearity = Nonlinearity::kNone;
  double offset = 0.0;
};

EmbeddingSet apply_domain_shift(const EmbeddingSet& set, const DomainSpec& spec);

// Plan-level description of a shift; expanded to a concrete DomainSpec for
// a given dimension using the stored seed.
struct DomainShiftParams {
  bool rotate = false;
  double scale_const = 1.0;
  double scale_min = 0.0;    // when scale_min/scale_max > 0: per-dim
  double scale_max = 0.0;    // log-uniform scales instead of scale_const
  double shift_norm = 0.0;   // random direction with this norm
  double shift_const = 0.0;  // added to every coordinate
  Nonlinearity nonlinearity = Nonlinearity::kNone;
  double offset = 0.0;
  std::uint64_t seed = 0;
};

DomainSpec expand_domain(const DomainShiftParams& params, int dim);

// Targets: all same-speaker utterance pairs. Nontargets: an equal number of
// seeded cross-speaker pairs without duplicates.
TrialList make_trials(const EmbeddingSet& test, std::uint64_t seed);

struct TruthParams {
  int dim = 32;
  double psi_min = 0.1;
  double psi_max = 50.0;
  double scale_min = 0.8;
  double scale_max = 1.25;
  std::uint64_t seed = 1;
};

struct DomainPlan {
  int speakers = 0;
  int sessions = 0;
  std::uint64_t seed = 0;
  DomainShiftParams shift;
  std::string tag;
};

struct ExperimentPlan {
  TruthParams truth;
  std::vector<DomainPlan> train;      // one or more training domains
  DomainPlan test;
  std::optional<DomainPlan> adapt;    // defaults to the test domain's shift
  std::vector<std::string> backends = {"cos", "plda"};
  std::vector<std::string> adaptations = {"none"};  // none | coral | coral+
  double alpha_b = 0.5;
  double alpha_w = 0.5;
  double p_target = 0.01;
  std::uint64_t trial_seed = 0;
  int em_iters = 20;
  double tol = 1e-6;
};

struct CellResult {
  std::string backend;
  std::string adaptation;
  double eer = 0.0;
  double min_dcf = 0.0;
  double min_cp = 0.0;
};

// Runs one experimental condition: samples and shifts the training and test
// domains, fits the requested back-ends, scores speaker-disjoint trials and
// reports metrics per backend x adaptation cell. Deterministic in the plan
// seeds.
std::vector<CellResult> run_condition(const ExperimentPlan& plan);

}  // namespace svkit

#endif  // SVKIT_SYNTHLAB_HPP_
