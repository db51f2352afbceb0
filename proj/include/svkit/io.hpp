// include/svkit/io.hpp
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

#ifndef SVKIT_IO_HPP_
#define SVKIT_IO_HPP_

#include <iosfwd>
#include <string>

#include "svkit/diagnostics.hpp"
#include "svkit/synthlab.hpp"
#include "svkit/types.hpp"

namespace svkit {

// Embedding files.
//   CSV: header "id,spk,f0..f{D-1}" (spk may be empty), values printed with
//        17 significant digits so doubles round-trip.
//   BIN: magic "EMB1", little-endian u32 dim, u32 count, then per record
//        u16 id length, id bytes (UTF-8), u16 spk length, spk bytes,
//        D float64.
enum class EmbeddingFormat { kCsv, kBin };

void write_embeddings(const std::string& path, const EmbeddingSet& set,
                      EmbeddingFormat format);
EmbeddingSet read_embeddings(const std::string& path, EmbeddingFormat format);
// Sniffs the EMB1 magic to pick the format.
EmbeddingSet read_embeddings(const std::string& path);

// Trial files: whitespace-separated "enroll test [target|nontarget]" lines,
// '#' comments ignored. A missing key token means the key is unknown; any
// other third token is an error.
void write_trials(const std::string& path, const TrialList& trials);
TrialList read_trials(const std::string& path);

// Score files: "enroll test score" with the score printed to 6 decimals.
void write_scores(const std::string& path, const ScoreSet& scores);
ScoreSet read_scores(const std::string& path);

// Model files: magic "PLDA1", u32 dim, then m (D f64), A^{-1} (DxD f64
// row-major), psi (D f64), all little-endian. Round-trips bit-exactly.
void save_plda(const std::string& path, const PldaModel& model);
PldaModel load_plda(const std::string& path);

// Experiment plans: a line-oriented [section] / key = value format; see the
// README for the accepted sections and keys.
ExperimentPlan parse_plan(const std::string& path);

void write_results_csv(const std::string& path, const std::vector<CellResult>& results);

// Diagnostics report as CSV blocks.
void write_report_csv(std::ostream& os, const DiagnosticsReport& report);

// Fixed 6-decimal rendering used for scores and metric output.
std::string format_fixed6(double v);

}  // namespace svkit

#endif  // SVKIT_IO_HPP_
