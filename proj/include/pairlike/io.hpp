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

#ifndef PAIRLIKE_IO_HPP_
#define PAIRLIKE_IO_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pairlike/abstention.hpp"
#include "pairlike/core.hpp"
#include "pairlike/ensemble.hpp"
#include "pairlike/eval.hpp"

// CSV formats shared by every command. Files are UTF-8 with Unix newlines
// and '.' decimals. Writers start with the comment line "# plm-v1"; readers
// skip '#' comment lines and blank lines. Floats are written with 17
// significant digits through std::to_chars, so they re-parse exactly and
// never depend on the locale.
namespace pairlike::io {

inline constexpr std::string_view kFormatVersion = "plm-v1";

std::string format_double(double value);
// Strict: the whole field must be a number ("nan" and "inf" included).
double parse_double(std::string_view field, std::size_t line);
int parse_int(std::string_view field, std::size_t line);

// `sample_id,p_0,...,p_{c-1}`. A row whose probabilities are all "nan"
// marks a sample that failed upstream.
struct PosteriorRow {
  std::string sample_id;
  std::optional<Posterior> posterior;
};

std::vector<PosteriorRow> read_posteriors(std::istream& in);
void write_posteriors(std::ostream& out, std::span<const PosteriorRow> rows, int classes);

// `sample_id,i,j,r_ij`, i < j only. Rows of one sample may appear in any
// order but every pair must be present exactly once; c is the largest
// index + 1. Samples keep first-appearance order.
struct PairwiseRow {
  std::string sample_id;
  PairwiseLikelihoodMatrix matrix;
};

std::vector<PairwiseRow> read_pairwise(std::istream& in);
void write_pairwise(std::ostream& out, std::span<const PairwiseRow> rows);

// `sample_id,label`. The class count is taken from `classes` when given,
// otherwise from the largest label + 1 (at least 2).
LabeledBatch read_labels(std::istream& in, std::optional<int> classes = std::nullopt);
void write_labels(std::ostream& out, const LabeledBatch& labels);

// `i,j,prob_i` applies to every sample; `sample_id,i,j,prob_i` gives a
// patch per sample.
struct PatchTable {
  std::optional<CorrectionPatch> shared;
  std::unordered_map<std::string, CorrectionPatch> per_sample;

  // The patch for a sample (empty when none applies).
  CorrectionPatch for_sample(const std::string& sample_id) const;
};

PatchTable read_patches(std::istream& in);
void write_patch(std::ostream& out, const CorrectionPatch& patch);

// `sample_id,method,distance`.
std::vector<SurenessScore> read_distances(std::istream& in);
void write_distances(std::ostream& out, std::span<const SurenessScore> scores);

// `sample_id,class,mean,sd,min,d10,...,d90,max`, then one footer row
// `sample_id,excluded,<count>` per sample.
void write_summary_header(std::ostream& out);
void write_summary(std::ostream& out, const std::string& sample_id,
                   const EnsembleSummary& summary);

// Header row `true\pred,0,1,...`, then one row per true class.
void write_confusion(std::ostream& out, const ConfusionMatrix& confusion);
ConfusionMatrix read_confusion(std::istream& in);

// `sample_id,x_0,...,x_{d-1}`.
void write_features(std::ostream& out, const Eigen::MatrixXd& features,
                    const LabeledBatch& labels);

}  // namespace pairlike::io

#endif  // PAIRLIKE_IO_HPP_
