// tests/test_cli.cpp
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
// Drives the installed binary through std::system: subcommand behavior,
// exit codes, and file outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "svkit/io.hpp"

#ifndef SVKIT_CLI_PATH
#define SVKIT_CLI_PATH "svkit"
#endif

using namespace svkit;
namespace fs = std::filesystem;

namespace {

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::path("cli_test_tmp");
    fs::remove_all(dir);
    fs::create_directories(dir);
  }

  std::string file(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    std::string cmd = std::string("\"") + SVKIT_CLI_PATH + "\" " + args + " > \"" +
                      file("stdout.txt") + "\" 2> \"" + file("stderr.txt") + "\"";
    int rc = std::system(cmd.c_str());
    if (rc < 0) return -1;
#ifdef WEXITSTATUS
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
    return rc;
#endif
  }

  std::string stdout_text() const {
    std::ifstream in(file("stdout.txt"));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
};

}  // namespace

TEST_CASE("cli end-to-end pipeline and exit codes") {
  CliFixture t;

  SUBCASE("full pipeline succeeds") {
    CHECK(t.run("synth --dim 8 --speakers 40 --sessions 4 --seed 5 --out " +
                t.file("train.csv")) == 0);
    CHECK(t.run("synth --dim 8 --speakers 20 --sessions 4 --seed 6 --prefix t --out " +
                t.file("test.bin") + " --trials-out " + t.file("trials.txt") +
                " --trial-seed 7") == 0);
    CHECK(t.run("train-plda --train " + t.file("train.csv") + " --out " +
                t.file("model.plda")) == 0);
    CHECK(t.run("score --backend plda --model " + t.file("model.plda") +
                " --enroll " + t.file("test.bin") + " --test " + t.file("test.bin") +
                " --trials " + t.file("trials.txt") + " --out " + t.file("scores.txt")) == 0);
    CHECK(t.run("metrics --scores " + t.file("scores.txt") + " --trials " +
                t.file("trials.txt")) == 0);
    std::string line = t.stdout_text();
    CHECK(line.find("eer=") == 0);
    CHECK(line.find("min_dcf=") != std::string::npos);
    CHECK(line.find("min_cp=") != std::string::npos);

    // Adaptation and diagnostics run on the same artifacts.
    CHECK(t.run("synth --dim 8 --speakers 30 --sessions 3 --seed 8 --prefix a"
                " --scale 1.7 --out " + t.file("indomain.bin")) == 0);
    CHECK(t.run("adapt --method coral+ --model " + t.file("model.plda") +
                " --indomain " + t.file("indomain.bin") + " --out " +
                t.file("adapted.plda") + " --alpha-b 0.6 --alpha-w 0.4") == 0);
    PldaModel adapted = load_plda(t.file("adapted.plda"));
    CHECK(adapted.dim() == 8);
    CHECK(t.run("adapt --method coral --model " + t.file("model.plda") +
                " --indomain " + t.file("indomain.bin") + " --out " +
                t.file("coral.plda")) == 0);

    CHECK(t.run("diagnose --model " + t.file("model.plda") + " --test " +
                t.file("indomain.bin") + " --train " + t.file("train.csv") +
                " --out " + t.file("report.csv") + " --tau 0.2") == 0);
    std::string diag = t.stdout_text();
    CHECK(diag.find("recommendation=") == 0);
    CHECK(diag.find("mismatch_index=") != std::string::npos);
    std::ifstream report(t.file("report.csv"));
    std::string first;
    std::getline(report, first);
    CHECK(first == "[variance_profile]");
  }

  SUBCASE("metrics on a perfectly separated score file prints eer=0.000000") {
    {
      std::ofstream scores(t.file("s.txt"));
      scores << "a x 0.900000\na y 0.100000\nb x 0.800000\nb y 0.050000\n";
      std::ofstream trials(t.file("k.txt"));
      trials << "a x target\na y nontarget\nb x target\nb y nontarget\n";
    }
    CHECK(t.run("metrics --scores " + t.file("s.txt") + " --trials " + t.file("k.txt")) == 0);
    CHECK(t.stdout_text().find("eer=0.000000") == 0);
  }

  SUBCASE("usage errors exit 1") {
    CHECK(t.run("score --backend plda --enroll x --test y --trials z --out w") == 1);
    CHECK(t.run("definitely-not-a-command") == 1);
    CHECK(t.run("score --backend nope --enroll x --test y --trials z --out w") == 1);
  }

  SUBCASE("data errors exit 2") {
    CHECK(t.run("train-plda --train does_not_exist.bin --out " + t.file("m.plda")) == 2);
    {
      std::ofstream bad(t.file("bad.bin"), std::ios::binary);
      bad << "JUNKJUNKJUNK";
    }
    CHECK(t.run("train-plda --train " + t.file("bad.bin") + " --out " + t.file("m.plda")) == 2);
  }

  SUBCASE("experiment run emits a results table") {
    {
      std::ofstream plan(t.file("plan.txt"));
      plan << "[truth]\n"
              "dim = 8\npsi_min = 0.2\npsi_max = 10\nseed = 1\n"
              "[train]\nspeakers = 40\nsessions = 5\nseed = 2\n"
              "[test]\nspeakers = 16\nsessions = 3\nseed = 3\n"
              "scale_min = 0.5\nscale_max = 2\nshift_norm = 1\ndomain_seed = 4\n"
              "[adapt]\nspeakers = 60\nsessions = 3\nseed = 5\n"
              "scale_min = 0.5\nscale_max = 2\nshift_norm = 1\ndomain_seed = 4\n"
              "[run]\n"
              "backends = cos, plda\nadaptation = none, coral+\ntrial_seed = 6\n";
    }
    CHECK(t.run("experiment run --plan " + t.file("plan.txt") + " --out " +
                t.file("results.csv")) == 0);
    std::ifstream results(t.file("results.csv"));
    std::string header;
    std::getline(results, header);
    CHECK(header == "backend,adaptation,eer,min_dcf,min_cp");
    int rows = 0;
    std::string row;
    while (std::getline(results, row))
      if (!row.empty()) ++rows;
    CHECK(rows == 3);  // cos/none, plda/none, plda/coral+
  }
}
