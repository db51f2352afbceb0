// src/io.cpp
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

#include "svkit/io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace svkit {

namespace {

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError(IoCode::kParse, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError(IoCode::kParse, "cannot open '" + path + "' for writing");
  return out;
}

void put_u16(std::ostream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint16_t get_u16(std::istream& is, const char* what) {
  unsigned char b[2];
  if (!is.read(reinterpret_cast<char*>(b), 2))
    throw IoError(IoCode::kTruncatedRecord, std::string("truncated file: ") + what);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& is, const char* what) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4))
    throw IoError(IoCode::kTruncatedRecord, std::string("truncated file: ") + what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is, const char* what) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8))
    throw IoError(IoCode::kTruncatedRecord, std::string("truncated file: ") + what);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string get_bytes(std::istream& is, std::size_t n, const char* what) {
  std::string s(n, '\0');
  if (n > 0 && !is.read(s.data(), static_cast<std::streamsize>(n)))
    throw IoError(IoCode::kTruncatedRecord, std::string("truncated file: ") + what);
  return s;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok, int line, const std::string& path) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw IoError(IoCode::kParse, path + ":" + std::to_string(line) +
                                      ": expected a number, got '" + tok + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

void check_csv_safe(const std::string& s, const char* what) {
  if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
    throw DataError(std::string(what) + " '" + s + "' contains a comma or newline");
}

constexpr char kEmbMagic[4] = {'E', 'M', 'B', '1'};
constexpr char kPldaMagic[5] = {'P', 'L', 'D', 'A', '1'};

}  // namespace

std::string format_fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_embeddings(const std::string& path, const EmbeddingSet& set,
                      EmbeddingFormat format) {
  if (format == EmbeddingFormat::kCsv) {
    std::ofstream out = open_out(path, false);
    out << "id,spk";
    for (int i = 0; i < set.dim(); ++i) out << ",f" << i;
    out << "\n";
    for (const Embedding& e : set.records()) {
      check_csv_safe(e.id, "id");
      std::string spk = set.labeled() ? set.labels().at(e.id) : "";
      check_csv_safe(spk, "label");
      out << e.id << "," << spk;
      for (double v : e.vec) out << "," << g17(v);
      out << "\n";
    }
    if (!out) throw IoError(IoCode::kParse, "write failed: " + path);
    return;
  }

  std::ofstream out = open_out(path, true);
  out.write(kEmbMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(set.dim()));
  put_u32(out, static_cast<std::uint32_t>(set.size()));
  for (const Embedding& e : set.records()) {
    if (e.id.size() > UINT16_MAX) throw DataError("id too long for binary format");
    std::string spk = set.labeled() ? set.labels().at(e.id) : "";
    if (spk.size() > UINT16_MAX) throw DataError("label too long for binary format");
    put_u16(out, static_cast<std::uint16_t>(e.id.size()));
    out.write(e.id.data(), static_cast<std::streamsize>(e.id.size()));
    put_u16(out, static_cast<std::uint16_t>(spk.size()));
    out.write(spk.data(), static_cast<std::streamsize>(spk.size()));
    for (double v : e.vec) put_f64(out, v);
  }
  if (!out) throw IoError(IoCode::kParse, "write failed: " + path);
}

namespace {

EmbeddingSet read_embeddings_csv(const std::string& path) {
  std::ifstream in = open_in(path, false);
  std::string line;
  if (!std::getline(in, line))
    throw IoError(IoCode::kParse, path + ":1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv(line);
  if (header.size() < 3 || header[0] != "id" || header[1] != "spk")
    throw IoError(IoCode::kParse, path + ":1: expected header 'id,spk,f0..'");
  const int dim = static_cast<int>(header.size()) - 2;
  for (int i = 0; i < dim; ++i)
    if (header[i + 2] != "f" + std::to_string(i))
      throw IoError(IoCode::kParse, path + ":1: bad feature column '" + header[i + 2] + "'");

  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  bool any_label = false;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (static_cast<int>(fields.size()) != dim + 2)
      throw IoError(IoCode::kParse,
                    path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(dim + 2) + " columns, got " +
                        std::to_string(fields.size()));
    Embedding e;
    e.id = fields[0];
    e.vec.resize(dim);
    for (int i = 0; i < dim; ++i) e.vec[i] = parse_double(fields[i + 2], line_no, path);
    if (!fields[1].empty()) {
      labels[e.id] = fields[1];
      any_label = true;
    }
    records.push_back(std::move(e));
  }
  if (!any_label) labels.clear();
  return EmbeddingSet::create(dim, std::move(records), std::move(labels));
}

EmbeddingSet read_embeddings_bin(const std::string& path) {
  std::ifstream in = open_in(path, true);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kEmbMagic, 4) != 0)
    throw IoError(IoCode::kMagicMismatch, path + ": not an EMB1 file");
  std::uint32_t dim = get_u32(in, "dim");
  std::uint32_t count = get_u32(in, "count");
  if (dim == 0) throw IoError(IoCode::kDimensionMismatch, path + ": zero dimension");

  std::vector<Embedding> records;
  std::map<std::string, std::string> labels;
  bool any_label = false;
  records.reserve(count);
  for (std::uint32_t r = 0; r < count; ++r) {
    std::uint16_t id_len = get_u16(in, "id length");
    Embedding e;
    e.id = get_bytes(in, id_len, "id bytes");
    std::uint16_t spk_len = get_u16(in, "spk length");
    std::string spk = get_bytes(in, spk_len, "spk bytes");
    e.vec.resize(dim);
    for (std::uint32_t i = 0; i < dim; ++i) e.vec[i] = get_f64(in, "embedding value");
    if (!spk.empty()) {
      labels[e.id] = spk;
      any_label = true;
    }
    records.push_back(std::move(e));
  }
  if (!any_label) labels.clear();
  return EmbeddingSet::create(static_cast<int>(dim), std::move(records),
                              std::move(labels));
}

}  // namespace

EmbeddingSet read_embeddings(const std::string& path, EmbeddingFormat format) {
  return format == EmbeddingFormat::kCsv ? read_embeddings_csv(path)
                                         : read_embeddings_bin(path);
}

EmbeddingSet read_embeddings(const std::string& path) {
  {
    std::ifstream in = open_in(path, true);
    char magic[4];
    if (in.read(magic, 4) && std::memcmp(magic, kEmbMagic, 4) == 0)
      return read_embeddings_bin(path);
  }
  return read_embeddings_csv(path);
}

void write_trials(const std::string& path, const TrialList& trials) {
  std::ofstream out = open_out(path, false);
  for (const Trial& t : trials.trials()) {
    out << t.enroll_id << " " << t.test_id;
    if (t.key == TrialKey::kTarget) out << " target";
    if (t.key == TrialKey::kNontarget) out << " nontarget";
    out << "\n";
  }
  if (!out) throw IoError(IoCode::kParse, "write failed: " + path);
}

TrialList read_trials(const std::string& path) {
  std::ifstream in = open_in(path, false);
  std::vector<Trial> trials;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() < 2 || tok.size() > 3)
      throw IoError(IoCode::kParse, path + ":" + std::to_string(line_no) +
                                        ": expected 'enroll test [key]'");
    Trial t;
    t.enroll_id = tok[0];
    t.test_id = tok[1];
    if (tok.size() == 3) {
      if (tok[2] == "target") {
        t.key = TrialKey::kTarget;
      } else if (tok[2] == "nontarget") {
        t.key = TrialKey::kNontarget;
      } else {
        throw IoError(IoCode::kParse, path + ":" + std::to_string(line_no) +
                                          ": unknown key token '" + tok[2] + "'");
      }
    }
    trials.push_back(std::move(t));
  }
  return TrialList::create(std::move(trials));
}

void write_scores(const std::string& path, const ScoreSet& scores) {
  std::ofstream out = open_out(path, false);
  for (const ScoreEntry& e : scores.entries())
    out << e.enroll_id << " " << e.test_id << " " << format_fixed6(e.score) << "\n";
  if (!out) throw IoError(IoCode::kParse, "write failed: " + path);
}

ScoreSet read_scores(const std::string& path) {
  std::ifstream in = open_in(path, false);
  std::vector<ScoreEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() != 3)
      throw IoError(IoCode::kParse, path + ":" + std::to_string(line_no) +
                                        ": expected 'enroll test score'");
    entries.push_back({tok[0], tok[1], parse_double(tok[2], line_no, path)});
  }
  return ScoreSet::create(std::move(entries));
}

void save_plda(const std::string& path, const PldaModel& model) {
  std::ofstream out = open_out(path, true);
  out.write(kPldaMagic, 5);
  const int d = model.dim();
  put_u32(out, static_cast<std::uint32_t>(d));
  for (double v : model.mean()) put_f64(out, v);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) put_f64(out, model.a_inv()(i, j));
  for (double v : model.psi()) put_f64(out, v);
  if (!out) throw IoError(IoCode::kParse, "write failed: " + path);
}

PldaModel load_plda(const std::string& path) {
  std::ifstream in = open_in(path, true);
  char magic[5];
  if (!in.read(magic, 5) || std::memcmp(magic, kPldaMagic, 5) != 0)
    throw IoError(IoCode::kMagicMismatch, path + ": not a PLDA1 file");
  std::uint32_t dim = get_u32(in, "dim");
  if (dim == 0) throw IoError(IoCode::kDimensionMismatch, path + ": zero dimension");
  Vec mean(dim);
  for (std::uint32_t i = 0; i < dim; ++i) mean[i] = get_f64(in, "mean");
  Matrix a_inv(static_cast<int>(dim), static_cast<int>(dim));
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j)
      a_inv(static_cast<int>(i), static_cast<int>(j)) = get_f64(in, "transform");
  Vec psi(dim);
  for (std::uint32_t i = 0; i < dim; ++i) psi[i] = get_f64(in, "psi");
  try {
    return PldaModel(std::move(mean), std::move(a_inv), std::move(psi));
  } catch (const DataError& e) {
    throw IoError(IoCode::kParse, path + ": invalid model: " + e.what());
  }
}

namespace {

Nonlinearity parse_nonlinearity(const std::string& v, int line, const std::string& path) {
  if (v == "none") return Nonlinearity::kNone;
  if (v == "relu") return Nonlinearity::kRelu;
  if (v == "shifted_relu") return Nonlinearity::kShiftedRelu;
  throw IoError(IoCode::kParse, path + ":" + std::to_string(line) +
                                    ": unknown nonlinearity '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentPlan parse_plan(const std::string& path) {
  std::ifstream in = open_in(path, false);
  ExperimentPlan plan;
  std::string section;
  DomainPlan* domain = nullptr;
  std::string line;
  int line_no = 0;

  auto fail = [&](const std::string& msg) -> IoError {
    return IoError(IoCode::kParse, path + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw fail("unterminated section header");
      section = t.substr(1, t.size() - 2);
      if (section == "train") {
        plan.train.emplace_back();
        domain = &plan.train.back();
      } else if (section == "test") {
        domain = &plan.test;
      } else if (section == "adapt") {
        plan.adapt.emplace();
        domain = &*plan.adapt;
      } else if (section == "truth" || section == "run") {
        domain = nullptr;
      } else {
        throw fail("unknown section '" + section + "'");
      }
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw fail("expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty()) throw fail("expected 'key = value'");

    auto as_double = [&]() { return parse_double(value, line_no, path); };
    auto as_int = [&]() { return static_cast<int>(as_double()); };
    auto as_u64 = [&]() { return static_cast<std::uint64_t>(as_double()); };
    auto as_bool = [&]() {
      if (value == "true") return true;
      if (value == "false") return false;
      throw fail("expected true/false for '" + key + "'");
    };

    if (section == "truth") {
      if (key == "dim") plan.truth.dim = as_int();
      else if (key == "psi_min") plan.truth.psi_min = as_double();
      else if (key == "psi_max") plan.truth.psi_max = as_double();
      else if (key == "scale_min") plan.truth.scale_min = as_double();
      else if (key == "scale_max") plan.truth.scale_max = as_double();
      else if (key == "seed") plan.truth.seed = as_u64();
      else throw fail("unknown key '" + key + "' in [truth]");
    } else if (section == "run") {
      if (key == "backends") plan.backends = split_list(value);
      else if (key == "adaptation") plan.adaptations = split_list(value);
      else if (key == "alpha_b") plan.alpha_b = as_double();
      else if (key == "alpha_w") plan.alpha_w = as_double();
      else if (key == "p_target") plan.p_target = as_double();
      else if (key == "trial_seed") plan.trial_seed = as_u64();
      else if (key == "em_iters") plan.em_iters = as_int();
      else if (key == "tol") plan.tol = as_double();
      else throw fail("unknown key '" + key + "' in [run]");
    } else if (domain != nullptr) {
      if (key == "speakers") domain->speakers = as_int();
      else if (key == "sessions") domain->sessions = as_int();
      else if (key == "seed") domain->seed = as_u64();
      else if (key == "rotate") domain->shift.rotate = as_bool();
      else if (key == "scale") domain->shift.scale_const = as_double();
      else if (key == "scale_min") domain->shift.scale_min = as_double();
      else if (key == "scale_max") domain->shift.scale_max = as_double();
      else if (key == "shift_norm") domain->shift.shift_norm = as_double();
      else if (key == "shift_const") domain->shift.shift_const = as_double();
      else if (key == "nonlinearity")
        domain->shift.nonlinearity = parse_nonlinearity(value, line_no, path);
      else if (key == "offset") domain->shift.offset = as_double();
      else if (key == "domain_seed") domain->shift.seed = as_u64();
      else if (key == "domain") domain->tag = value;
      else throw fail("unknown key '" + key + "' in [" + section + "]");
    } else {
      throw fail("key outside of a section");
    }
  }
  if (plan.train.empty()) throw IoError(IoCode::kParse, path + ": no [train] section");
  if (plan.test.speakers <= 0)
    throw IoError(IoCode::kParse, path + ": no [test] section with speakers");
  return plan;
}

void write_results_csv(const std::string& path, const std::vector<CellResult>& results) {
  std::ofstream out = open_out(path, false);
  out << "backend,adaptation,eer,min_dcf,min_cp\n";
  for (const CellResult& r : results)
    out << r.backend << "," << r.adaptation << "," << format_fixed6(r.eer) << ","
        << format_fixed6(r.min_dcf) << "," << format_fixed6(r.min_cp) << "\n";
  if (!out) throw IoError(IoCode::kParse, "write failed: " + path);
}

void write_report_csv(std::ostream& os, const DiagnosticsReport& report) {
  os << "[variance_profile]\n";
  os << "dim,plda_std,test_std\n";
  for (std::size_t i = 0; i < report.plda_std.size(); ++i)
    os << i << "," << g17(report.plda_std[i]) << "," << g17(report.test_std[i]) << "\n";

  if (!report.skewness.empty()) {
    os << "[skewness_kurtosis]\n";
    os << "dim,skewness,excess_kurtosis\n";
    for (std::size_t i = 0; i < report.skewness.size(); ++i)
      os << i << "," << g17(report.skewness[i]) << ","
         << g17(report.excess_kurtosis[i]) << "\n";
  }

  if (report.distances.within.total() > 0 || report.distances.between.total() > 0) {
    os << "[within_distances]\n";
    os << "bin_lo,bin_hi,count\n";
    for (int b = 0; b < Histogram::kBins; ++b)
      os << g17(report.distances.within.bin_lo(b)) << ","
         << g17(report.distances.within.bin_hi(b)) << ","
         << report.distances.within.counts[b] << "\n";
    os << "[between_distances]\n";
    os << "bin_lo,bin_hi,count\n";
    for (int b = 0; b < Histogram::kBins; ++b)
      os << g17(report.distances.between.bin_lo(b)) << ","
         << g17(report.distances.between.bin_hi(b)) << ","
         << report.distances.between.counts[b] << "\n";
  }

  os << "[summary]\n";
  os << "mismatch_index," << format_fixed6(report.mismatch) << "\n";
  os << "tau," << format_fixed6(report.tau) << "\n";
  os << "recommendation,"
     << (report.recommendation == Backend::Kind::kCosine ? "Cos" : "Plda") << "\n";
}

}  // namespace svkit
