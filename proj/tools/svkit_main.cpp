// tools/svkit_main.cpp
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
// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 numeric failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "svkit/adaptation.hpp"
#include "svkit/diagnostics.hpp"
#include "svkit/io.hpp"
#include "svkit/metrics.hpp"
#include "svkit/scoring.hpp"
#include "svkit/synthlab.hpp"

namespace {

using namespace svkit;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EmbeddingFormat format_from_path(const std::string& path) {
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv"
             ? EmbeddingFormat::kCsv
             : EmbeddingFormat::kBin;
}

Nonlinearity nonlinearity_from_name(const std::string& name) {
  if (name == "none") return Nonlinearity::kNone;
  if (name == "relu") return Nonlinearity::kRelu;
  if (name == "shifted_relu") return Nonlinearity::kShiftedRelu;
  throw UsageError("unknown nonlinearity '" + name + "'");
}

struct Args {
  // train-plda
  std::string train_in, train_out;
  int em_iters = 20;
  double tol = 1e-6;

  // score
  std::string backend = "cos";
  std::string model_path, enroll_path, test_path, trials_path, scores_out;
  int threads = 1;

  // adapt
  std::string method, indomain_path, adapt_out;
  double alpha_b = 0.5, alpha_w = 0.5;

  // diagnose
  std::string diag_model, diag_test, diag_train, diag_out;
  double tau = 0.2;

  // metrics
  std::string metrics_scores, metrics_trials, det_out;
  double p_target = 0.01;

  // synth
  int dim = 32, speakers = 100, sessions = 5;
  std::uint64_t seed = 1, truth_seed = 1, domain_seed = 0, trial_seed = 0;
  double psi_min = 0.1, psi_max = 50.0;
  std::string prefix = "s";
  std::string synth_out, trials_out, truth_model_out;
  bool rotate = false;
  double scale = 1.0, scale_min = 0.0, scale_max = 0.0, shift_norm = 0.0;
  double shift_const = 0.0;
  std::string nonlinearity = "none";
  double offset = 0.0;

  // experiment
  std::string plan_path, results_out;
};

int run_train(const Args& a) {
  EmbeddingSet train = read_embeddings(a.train_in);
  PldaFitConfig cfg;
  cfg.em_iters = a.em_iters;
  cfg.tol = a.tol;
  PldaFitStats stats;
  PldaModel model = fit_plda(train, cfg, &stats);
  save_plda(a.train_out, model);
  std::cout << "trained dim=" << model.dim() << " speakers=" << train.num_speakers()
            << " iters=" << stats.iters_run
            << " avg_loglik=" << format_fixed6(stats.avg_loglik.back()) << "\n";
  return 0;
}

int run_score(const Args& a) {
  Backend backend;
  if (a.backend == "cos") {
    backend = Backend::cosine();
  } else if (a.backend == "plda") {
    if (a.model_path.empty())
      throw UsageError("score: --backend plda requires --model");
    backend = Backend::plda(load_plda(a.model_path));
  } else {
    throw UsageError("score: --backend must be cos or plda");
  }
  EmbeddingSet enroll = read_embeddings(a.enroll_path);
  EmbeddingSet test = read_embeddings(a.test_path);
  TrialList trials = read_trials(a.trials_path);
  ScoreSet scores = score_trials(backend, enroll, test, trials, a.threads);
  write_scores(a.scores_out, scores);
  std::cout << "scored " << scores.size() << " trials\n";
  return 0;
}

int run_adapt(const Args& a) {
  PldaModel model = load_plda(a.model_path);
  EmbeddingSet indomain = read_embeddings(a.indomain_path);
  if (a.method == "coral") {
    save_plda(a.adapt_out, coral_adapt_model(model, indomain));
  } else if (a.method == "coral+") {
    AdaptConfig cfg;
    cfg.alpha_b = a.alpha_b;
    cfg.alpha_w = a.alpha_w;
    save_plda(a.adapt_out, coral_plus_adapt_model(model, indomain, cfg));
  } else {
    throw UsageError("adapt: --method must be coral or coral+");
  }
  std::cout << "adapted model written to " << a.adapt_out << "\n";
  return 0;
}

int run_diagnose(const Args& a) {
  PldaModel model = load_plda(a.diag_model);
  EmbeddingSet test = read_embeddings(a.diag_test);

  DiagnosticsReport report;
  report.tau = a.tau;
  VarianceProfile profile = variance_profile(model, test);
  report.plda_std = profile.plda_std;
  report.test_std = profile.test_std;
  report.mismatch = mismatch_index(profile.plda_std, profile.test_std);
  report.recommendation = recommend_backend(report.mismatch, a.tau);

  if (!a.diag_train.empty()) {
    EmbeddingSet train = read_embeddings(a.diag_train);
    report.distances = distance_histograms(train);
    int out_dim = std::min(train.dim(), train.num_speakers() - 1);
    Matrix proj = lda_projection(train, out_dim);
    SkewKurt sk = skewness_kurtosis(train, proj);
    report.skewness = sk.skewness;
    report.excess_kurtosis = sk.excess_kurtosis;
  }

  std::ofstream out(a.diag_out);
  if (!out) throw DataError("cannot open '" + a.diag_out + "' for writing");
  write_report_csv(out, report);
  std::cout << "recommendation="
            << (report.recommendation == Backend::Kind::kCosine ? "Cos" : "Plda")
            << " mismatch_index=" << format_fixed6(report.mismatch) << "\n";
  return 0;
}

int run_metrics(const Args& a) {
  ScoreSet scores = read_scores(a.metrics_scores);
  TrialList trials = read_trials(a.metrics_trials);
  LabeledScores labeled = partition_scores(scores, trials);
  std::cout << "eer=" << format_fixed6(eer(labeled))
            << ", min_dcf=" << format_fixed6(min_dcf(labeled, a.p_target))
            << ", min_cp=" << format_fixed6(min_cprimary(labeled)) << "\n";
  if (!a.det_out.empty()) {
    std::ofstream out(a.det_out);
    if (!out) throw DataError("cannot open '" + a.det_out + "' for writing");
    out << "threshold,p_miss,p_fa\n";
    for (const DetPoint& p : det_points(labeled))
      out << p.threshold << "," << format_fixed6(p.p_miss) << ","
          << format_fixed6(p.p_fa) << "\n";
  }
  return 0;
}

int run_synth(const Args& a) {
  TruthModel truth = default_truth(a.dim, a.psi_min, a.psi_max, a.truth_seed);
  EmbeddingSet set = sample_plda(truth, a.speakers, a.sessions, a.seed, a.prefix);

  DomainShiftParams params;
  params.rotate = a.rotate;
  params.scale_const = a.scale;
  params.scale_min = a.scale_min;
  params.scale_max = a.scale_max;
  params.shift_norm = a.shift_norm;
  params.shift_const = a.shift_const;
  params.nonlinearity = nonlinearity_from_name(a.nonlinearity);
  params.offset = a.offset;
  params.seed = a.domain_seed;
  set = apply_domain_shift(set, expand_domain(params, a.dim));

  write_embeddings(a.synth_out, set, format_from_path(a.synth_out));
  if (!a.trials_out.empty())
    write_trials(a.trials_out, make_trials(set, a.trial_seed));
  if (!a.truth_model_out.empty())
    save_plda(a.truth_model_out, truth_to_model(truth));
  std::cout << "wrote " << set.size() << " embeddings (dim " << set.dim() << ")\n";
  return 0;
}

int run_experiment(const Args& a) {
  ExperimentPlan plan = parse_plan(a.plan_path);
  std::vector<CellResult> results = run_condition(plan);
  write_results_csv(a.results_out, results);
  for (const CellResult& r : results)
    std::cout << r.backend << "/" << r.adaptation << " eer=" << format_fixed6(r.eer)
              << " min_dcf=" << format_fixed6(r.min_dcf)
              << " min_cp=" << format_fixed6(r.min_cp) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svkit: speaker verification back-end toolkit"};
  app.require_subcommand(1);
  Args a;

  CLI::App* train = app.add_subcommand("train-plda", "Train a PLDA model on labeled embeddings");
  train->add_option("--train", a.train_in, "training embeddings (csv or bin)")->required();
  train->add_option("--out", a.train_out, "output model file")->required();
  train->add_option("--em-iters", a.em_iters, "maximum EM iterations");
  train->add_option("--tol", a.tol, "relative log-likelihood stopping tolerance");

  CLI::App* score = app.add_subcommand("score", "Score a trial list");
  score->add_option("--backend", a.backend, "cos or plda")->required();
  score->add_option("--model", a.model_path, "PLDA model (required for plda)");
  score->add_option("--enroll", a.enroll_path, "enrollment embeddings")->required();
  score->add_option("--test", a.test_path, "test embeddings")->required();
  score->add_option("--trials", a.trials_path, "trial list")->required();
  score->add_option("--out", a.scores_out, "output score file")->required();
  score->add_option("--threads", a.threads, "worker threads");

  CLI::App* adapt = app.add_subcommand("adapt", "Adapt a PLDA model to unlabeled in-domain data");
  adapt->add_option("--method", a.method, "coral or coral+")->required();
  adapt->add_option("--model", a.model_path, "input model")->required();
  adapt->add_option("--indomain", a.indomain_path, "in-domain embeddings")->required();
  adapt->add_option("--out", a.adapt_out, "output model")->required();
  adapt->add_option("--alpha-b", a.alpha_b, "between-class interpolation weight");
  adapt->add_option("--alpha-w", a.alpha_w, "within-class interpolation weight");

  CLI::App* diagnose = app.add_subcommand("diagnose", "Distribution diagnostics and back-end recommendation");
  diagnose->add_option("--model", a.diag_model, "PLDA model")->required();
  diagnose->add_option("--test", a.diag_test, "test embeddings")->required();
  diagnose->add_option("--train", a.diag_train, "labeled training embeddings (optional)");
  diagnose->add_option("--out", a.diag_out, "report CSV")->required();
  diagnose->add_option("--tau", a.tau, "mismatch threshold for the recommendation");

  CLI::App* metrics = app.add_subcommand("metrics", "EER / minDCF / min Cprimary from scores and a trial key");
  metrics->add_option("--scores", a.metrics_scores, "score file")->required();
  metrics->add_option("--trials", a.metrics_trials, "keyed trial list")->required();
  metrics->add_option("--p-target", a.p_target, "target prior for minDCF");
  metrics->add_option("--det", a.det_out, "optional DET curve CSV");

  CLI::App* synth = app.add_subcommand("synth", "Generate synthetic embeddings");
  synth->add_option("--dim", a.dim, "embedding dimension");
  synth->add_option("--speakers", a.speakers, "number of speakers");
  synth->add_option("--sessions", a.sessions, "sessions per speaker");
  synth->add_option("--seed", a.seed, "sampling seed");
  synth->add_option("--truth-seed", a.truth_seed, "truth model seed");
  synth->add_option("--psi-min", a.psi_min, "smallest between-class variance");
  synth->add_option("--psi-max", a.psi_max, "largest between-class variance");
  synth->add_option("--prefix", a.prefix, "speaker id prefix");
  synth->add_option("--out", a.synth_out, "output embeddings (.csv for CSV, else binary)")->required();
  synth->add_option("--trials-out", a.trials_out, "optional trial list output");
  synth->add_option("--trial-seed", a.trial_seed, "nontarget sampling seed");
  synth->add_option("--truth-out", a.truth_model_out, "optional truth model output");
  synth->add_flag("--rotate", a.rotate, "apply a random rotation");
  synth->add_option("--scale", a.scale, "constant per-dimension scale");
  synth->add_option("--scale-min", a.scale_min, "log-uniform scale lower bound");
  synth->add_option("--scale-max", a.scale_max, "log-uniform scale upper bound");
  synth->add_option("--shift-norm", a.shift_norm, "norm of a random mean shift");
  synth->add_option("--shift-const", a.shift_const, "constant added to every coordinate");
  synth->add_option("--nonlinearity", a.nonlinearity, "none, relu or shifted_relu");
  synth->add_option("--offset", a.offset, "shifted_relu offset");
  synth->add_option("--domain-seed", a.domain_seed, "domain shift seed");

  CLI::App* experiment = app.add_subcommand("experiment", "Synthetic experiment harness");
  CLI::App* exp_run = experiment->add_subcommand("run", "Run a plan file");
  exp_run->add_option("--plan", a.plan_path, "plan file")->required();
  exp_run->add_option("--out", a.results_out, "results CSV")->required();
  experiment->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (train->parsed()) return run_train(a);
    if (score->parsed()) return run_score(a);
    if (adapt->parsed()) return run_adapt(a);
    if (diagnose->parsed()) return run_diagnose(a);
    if (metrics->parsed()) return run_metrics(a);
    if (synth->parsed()) return run_synth(a);
    if (experiment->parsed()) return run_experiment(a);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
