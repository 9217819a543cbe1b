// Copyright 2026 The pairlike Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pairlike/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <system_error>
#include <unordered_set>

namespace pairlike::io {
namespace {

// Yields the data lines of a CSV stream with their 1-based line numbers,
// skipping comments and blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void expect_header(LineReader& reader, std::string& line,
                   std::span<const std::string_view> expected, const char* what) {
  if (!reader.next(line)) throw FormatError(std::string("missing ") + what + " header", 0);
  const auto fields = split(line);
  if (!std::equal(fields.begin(), fields.end(), expected.begin(), expected.end())) {
    std::string want;
    for (auto f : expected) want += (want.empty() ? "" : ",") + std::string(f);
    throw FormatError(std::string("bad ") + what + " header, expected '" + want + "'",
                      reader.number());
  }
}

void expect_fields(const std::vector<std::string_view>& fields, std::size_t n,
                   std::size_t line) {
  if (fields.size() != n) {
    throw FormatError("expected " + std::to_string(n) + " fields, got " +
                          std::to_string(fields.size()),
                      line);
  }
}

std::string id_field(std::string_view field, std::size_t line) {
  if (field.empty()) throw FormatError("empty sample_id", line);
  return std::string(field);
}

void write_version(std::ostream& out) { out << "# " << kFormatVersion << '\n'; }

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw FormatError("not a number: '" + std::string(field) + "'", line);
  }
  return value;
}

int parse_int(std::string_view field, std::size_t line) {
  int value = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw FormatError("not an integer: '" + std::string(field) + "'", line);
  }
  return value;
}

// ---------------------------------------------------------------------------
// Posteriors

std::vector<PosteriorRow> read_posteriors(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw FormatError("missing posterior header", 0);
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "sample_id") {
    throw FormatError("posterior header must be sample_id,p_0,...,p_{c-1} with c >= 2",
                      reader.number());
  }
  for (std::size_t k = 1; k < header.size(); ++k) {
    if (header[k] != "p_" + std::to_string(k - 1)) {
      throw FormatError("posterior header column " + std::to_string(k) + " must be p_" +
                            std::to_string(k - 1),
                        reader.number());
    }
  }
  const std::size_t c = header.size() - 1;
  std::vector<PosteriorRow> rows;
  std::unordered_set<std::string> seen;
  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    const auto fields = split(line);
    expect_fields(fields, c + 1, ln);
    PosteriorRow row{id_field(fields[0], ln), std::nullopt};
    if (!seen.insert(row.sample_id).second) {
      throw FormatError("duplicate sample_id '" + row.sample_id + "'", ln);
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(c));
    std::size_t nans = 0;
    for (std::size_t k = 0; k < c; ++k) {
      p[static_cast<Eigen::Index>(k)] = parse_double(fields[k + 1], ln);
      if (std::isnan(p[static_cast<Eigen::Index>(k)])) ++nans;
    }
    if (nans == c) {
      rows.push_back(std::move(row));
      continue;
    }
    try {
      row.posterior.emplace(std::move(p));
    } catch (const InvariantViolation& e) {
      throw FormatError(e.what(), ln);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_posteriors(std::ostream& out, std::span<const PosteriorRow> rows, int classes) {
  write_version(out);
  out << "sample_id";
  for (int k = 0; k < classes; ++k) out << ",p_" << k;
  out << '\n';
  for (const auto& row : rows) {
    out << row.sample_id;
    if (row.posterior && row.posterior->classes() != classes) {
      throw StructuralError("posterior for '" + row.sample_id + "' has " +
                            std::to_string(row.posterior->classes()) + " classes, expected " +
                            std::to_string(classes));
    }
    for (int k = 0; k < classes; ++k) {
      out << ',' << (row.posterior ? format_double((*row.posterior)[k]) : "nan");
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Pairwise long format

std::vector<PairwiseRow> read_pairwise(std::istream& in) {
  LineReader reader(in);
  std::string line;
  constexpr std::string_view kHeader[] = {"sample_id", "i", "j", "r_ij"};
  expect_header(reader, line, kHeader, "pairwise");

  struct Entry {
    int i, j;
    double r;
    std::size_t line;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Entry>> by_sample;
  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    const auto fields = split(line);
    expect_fields(fields, 4, ln);
    std::string id = id_field(fields[0], ln);
    const int i = parse_int(fields[1], ln);
    const int j = parse_int(fields[2], ln);
    const double r = parse_double(fields[3], ln);
    if (i < 0 || i >= j) throw FormatError("pair indices must satisfy 0 <= i < j", ln);
    if (!(r >= 0.0 && r <= 1.0)) throw FormatError("r_ij must lie in [0, 1]", ln);
    auto [it, inserted] = by_sample.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.push_back({i, j, r, ln});
  }

  std::vector<PairwiseRow> rows;
  rows.reserve(order.size());
  for (const auto& id : order) {
    const auto& entries = by_sample.at(id);
    int c = 0;
    for (const auto& e : entries) c = std::max(c, e.j + 1);
    std::vector<double> upper(pair_count(c), -1.0);
    for (const auto& e : entries) {
      double& slot = upper[pair_index(c, e.i, e.j)];
      if (slot >= 0.0) {
        throw FormatError("duplicate pair (" + std::to_string(e.i) + "," +
                              std::to_string(e.j) + ") for sample '" + id + "'",
                          e.line);
      }
      slot = e.r;
    }
    if (entries.size() != upper.size()) {
      throw FormatError("sample '" + id + "' has " + std::to_string(entries.size()) +
                            " pairs, a " + std::to_string(c) + "-class matrix needs " +
                            std::to_string(upper.size()),
                        entries.back().line);
    }
    rows.push_back({id, PairwiseLikelihoodMatrix::from_upper(c, upper)});
  }
  return rows;
}

void write_pairwise(std::ostream& out, std::span<const PairwiseRow> rows) {
  write_version(out);
  out << "sample_id,i,j,r_ij\n";
  for (const auto& row : rows) {
    const int c = row.matrix.classes();
    for (int i = 0; i < c; ++i) {
      for (int j = i + 1; j < c; ++j) {
        out << row.sample_id << ',' << i << ',' << j << ','
            << format_double(row.matrix(i, j)) << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Labels

LabeledBatch read_labels(std::istream& in, std::optional<int> classes) {
  LineReader reader(in);
  std::string line;
  constexpr std::string_view kHeader[] = {"sample_id", "label"};
  expect_header(reader, line, kHeader, "labels");
  std::vector<LabeledSample> samples;
  int max_label = 1;
  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    const auto fields = split(line);
    expect_fields(fields, 2, ln);
    const int label = parse_int(fields[1], ln);
    if (label < 0 || (classes && label >= *classes)) {
      throw FormatError("label " + std::to_string(label) + " out of range", ln);
    }
    max_label = std::max(max_label, label);
    samples.push_back({id_field(fields[0], ln), label});
  }
  try {
    return LabeledBatch(classes.value_or(max_label + 1), std::move(samples));
  } catch (const InvariantViolation& e) {
    throw FormatError(e.what(), 0);
  }
}

void write_labels(std::ostream& out, const LabeledBatch& labels) {
  write_version(out);
  out << "sample_id,label\n";
  for (const auto& s : labels.samples()) out << s.sample_id << ',' << s.label << '\n';
}

// ---------------------------------------------------------------------------
// Patches

CorrectionPatch PatchTable::for_sample(const std::string& sample_id) const {
  if (shared) return *shared;
  const auto it = per_sample.find(sample_id);
  return it == per_sample.end() ? CorrectionPatch{} : it->second;
}

PatchTable read_patches(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw FormatError("missing patch header", 0);
  const auto header = split(line);
  const bool keyed = header.size() == 4 && header[0] == "sample_id";
  const bool shared = header.size() == 3 && header[0] == "i";
  if ((!keyed && !shared) || header[header.size() - 3] != "i" ||
      header[header.size() - 2] != "j" || header[header.size() - 1] != "prob_i") {
    throw FormatError("patch header must be 'i,j,prob_i' or 'sample_id,i,j,prob_i'",
                      reader.number());
  }
  PatchTable table;
  if (shared) table.shared.emplace();
  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    const auto fields = split(line);
    expect_fields(fields, header.size(), ln);
    const std::size_t off = keyed ? 1 : 0;
    const int i = parse_int(fields[off], ln);
    const int j = parse_int(fields[off + 1], ln);
    const double q = parse_double(fields[off + 2], ln);
    if (i < 0 || j < 0) throw FormatError("negative class index in patch", ln);
    try {
      CorrectionPatch& patch =
          keyed ? table.per_sample[id_field(fields[0], ln)] : *table.shared;
      patch.add(i, j, q);
    } catch (const PreconditionError& e) {
      throw FormatError(e.what(), ln);
    }
  }
  return table;
}

void write_patch(std::ostream& out, const CorrectionPatch& patch) {
  write_version(out);
  out << "i,j,prob_i\n";
  for (const auto& e : patch.entries()) {
    out << e.i << ',' << e.j << ',' << format_double(e.prob_i) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Distances

std::vector<SurenessScore> read_distances(std::istream& in) {
  LineReader reader(in);
  std::string line;
  constexpr std::string_view kHeader[] = {"sample_id", "method", "distance"};
  expect_header(reader, line, kHeader, "distance");
  std::vector<SurenessScore> out;
  while (reader.next(line)) {
    const std::size_t ln = reader.number();
    const auto fields = split(line);
    expect_fields(fields, 3, ln);
    Method method;
    try {
      method = parse_method(fields[1]);
    } catch (const PreconditionError& e) {
      throw FormatError(e.what(), ln);
    }
    const double d = parse_double(fields[2], ln);
    if (!(d >= 0.0)) throw FormatError("distance must be non-negative", ln);
    out.push_back({id_field(fields[0], ln), method, d});
  }
  return out;
}

void write_distances(std::ostream& out, std::span<const SurenessScore> scores) {
  write_version(out);
  out << "sample_id,method,distance\n";
  for (const auto& s : scores) {
    out << s.sample_id << ',' << to_string(s.method) << ',' << format_double(s.distance)
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// Ensemble summaries

void write_summary_header(std::ostream& out) {
  write_version(out);
  out << "sample_id,class,mean,sd,min";
  for (int d = 1; d <= 9; ++d) out << ",d" << d * 10;
  out << ",max\n";
}

void write_summary(std::ostream& out, const std::string& sample_id,
                   const EnsembleSummary& summary) {
  for (std::size_t k = 0; k < summary.classes.size(); ++k) {
    const ClassSummary& cs = summary.classes[k];
    out << sample_id << ',' << k << ',' << format_double(cs.mean) << ','
        << format_double(cs.sd) << ',' << format_double(cs.min);
    for (double d : cs.deciles) out << ',' << format_double(d);
    out << ',' << format_double(cs.max) << '\n';
  }
  out << sample_id << ",excluded," << summary.excluded << '\n';
}

// ---------------------------------------------------------------------------
// Confusion matrices

void write_confusion(std::ostream& out, const ConfusionMatrix& confusion) {
  write_version(out);
  out << "true\\pred";
  for (int k = 0; k < confusion.classes(); ++k) out << ',' << k;
  out << '\n';
  for (int i = 0; i < confusion.classes(); ++i) {
    out << i;
    for (int j = 0; j < confusion.classes(); ++j) out << ',' << confusion.counts(i, j);
    out << '\n';
  }
}

ConfusionMatrix read_confusion(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw FormatError("missing confusion header", 0);
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "true\\pred") {
    throw FormatError("confusion header must start with 'true\\pred'", reader.number());
  }
  const auto c = static_cast<int>(header.size() - 1);
  for (int k = 0; k < c; ++k) {
    if (parse_int(header[k + 1], reader.number()) != k) {
      throw FormatError("confusion header must list classes 0..c-1", reader.number());
    }
  }
  ConfusionMatrix m{CountMatrix::Zero(c, c)};
  for (int i = 0; i < c; ++i) {
    if (!reader.next(line)) throw FormatError("confusion matrix is missing rows", 0);
    const std::size_t ln = reader.number();
    const auto fields = split(line);
    expect_fields(fields, static_cast<std::size_t>(c) + 1, ln);
    if (parse_int(fields[0], ln) != i) throw FormatError("confusion rows out of order", ln);
    for (int j = 0; j < c; ++j) {
      const int v = parse_int(fields[j + 1], ln);
      if (v < 0) throw FormatError("negative count", ln);
      m.counts(i, j) = v;
    }
  }
  if (reader.next(line)) throw FormatError("trailing rows after confusion matrix", reader.number());
  return m;
}

// ---------------------------------------------------------------------------
// Features

void write_features(std::ostream& out, const Eigen::MatrixXd& features,
                    const LabeledBatch& labels) {
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw StructuralError("feature rows and labels disagree in length");
  }
  write_version(out);
  out << "sample_id";
  for (Eigen::Index d = 0; d < features.cols(); ++d) out << ",x_" << d;
  out << '\n';
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    out << labels.samples()[static_cast<std::size_t>(r)].sample_id;
    for (Eigen::Index d = 0; d < features.cols(); ++d) {
      out << ',' << format_double(features(r, d));
    }
    out << '\n';
  }
}

}  // namespace pairlike::io
