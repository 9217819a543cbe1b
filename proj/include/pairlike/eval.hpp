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

#ifndef PAIRLIKE_EVAL_HPP_
#define PAIRLIKE_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Core>

#include "pairlike/core.hpp"

namespace pairlike {

struct ClassPrediction {
  std::string sample_id;
  int predicted;
};

struct PairwiseObservation {
  std::string sample_id;
  BinaryPrediction prediction;
};

// Index of the largest entry; the lowest index wins ties.
int argmax_predict(const Posterior& p);

// Fraction of predictions matching their labels. Predictions and labels must
// cover the same set of sample ids.
double accuracy(std::span<const ClassPrediction> predictions, const LabeledBatch& labels);

// Fraction of binary predictions whose more likely class (class_a on ties)
// equals the label. Every label must be one of the prediction's two classes.
double pairwise_accuracy(std::span<const PairwiseObservation> observations,
                         const LabeledBatch& labels);

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  CountMatrix counts;

  int classes() const { return static_cast<int>(counts.rows()); }
  std::int64_t total() const { return counts.sum(); }
  std::int64_t correct() const { return counts.trace(); }
  double accuracy() const;
};

ConfusionMatrix confusion_matrix(std::span<const ClassPrediction> predictions,
                                 const LabeledBatch& labels);

struct ConfusedPair {
  int i;
  int j;
  std::int64_t errors;  // m_ij + m_ji
};

// Unordered pair with the largest off-diagonal mass, lexicographically first
// on ties. Empty when there is no confusion at all.
std::optional<ConfusedPair> worst_confused_pair(const ConfusionMatrix& confusion);

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace pairlike

#endif  // PAIRLIKE_EVAL_HPP_
