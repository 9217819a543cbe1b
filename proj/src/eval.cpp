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

#include "pairlike/eval.hpp"

#include <cstddef>
#include <unordered_set>

namespace pairlike {
namespace {

// Looks up every prediction's label and checks the id sets coincide.
template <typename Row, typename Fn>
void for_each_aligned(std::span<const Row> rows, const LabeledBatch& labels, Fn&& fn) {
  if (rows.size() != labels.size()) {
    throw PreconditionError("got " + std::to_string(rows.size()) + " predictions for " +
                            std::to_string(labels.size()) + " labelled samples");
  }
  std::unordered_set<std::string> seen;
  seen.reserve(rows.size());
  for (const Row& row : rows) {
    const auto label = labels.label_of(row.sample_id);
    if (!label) {
      throw PreconditionError("no label for sample '" + row.sample_id + "'");
    }
    if (!seen.insert(row.sample_id).second) {
      throw PreconditionError("sample '" + row.sample_id + "' predicted twice");
    }
    fn(row, *label);
  }
}

void check_class(const ClassPrediction& p, int classes) {
  if (p.predicted < 0 || p.predicted >= classes) {
    throw PreconditionError("prediction " + std::to_string(p.predicted) + " for sample '" +
                            p.sample_id + "' outside [0, " + std::to_string(classes) + ")");
  }
}

}  // namespace

int argmax_predict(const Posterior& p) {
  int best = 0;
  for (int k = 1; k < p.classes(); ++k) {
    if (p[k] > p[best]) best = k;
  }
  return best;
}

double accuracy(std::span<const ClassPrediction> predictions, const LabeledBatch& labels) {
  if (predictions.empty()) throw PreconditionError("accuracy of an empty batch");
  std::size_t hits = 0;
  for_each_aligned(predictions, labels, [&](const ClassPrediction& p, int label) {
    check_class(p, labels.classes());
    if (p.predicted == label) ++hits;
  });
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double pairwise_accuracy(std::span<const PairwiseObservation> observations,
                         const LabeledBatch& labels) {
  if (observations.empty()) throw PreconditionError("pairwise accuracy of an empty batch");
  std::size_t hits = 0;
  for_each_aligned(observations, labels, [&](const PairwiseObservation& o, int label) {
    const BinaryPrediction& b = o.prediction;
    if (label != b.class_a && label != b.class_b) {
      throw PreconditionError("sample '" + o.sample_id + "' has label " +
                              std::to_string(label) + ", not one of " +
                              std::to_string(b.class_a) + "/" + std::to_string(b.class_b));
    }
    if (b.predicted() == label) ++hits;
  });
  return static_cast<double>(hits) / static_cast<double>(observations.size());
}

double ConfusionMatrix::accuracy() const {
  const std::int64_t n = total();
  if (n == 0) throw PreconditionError("accuracy of an empty confusion matrix");
  return static_cast<double>(correct()) / static_cast<double>(n);
}

ConfusionMatrix confusion_matrix(std::span<const ClassPrediction> predictions,
                                 const LabeledBatch& labels) {
  const int c = labels.classes();
  ConfusionMatrix out{CountMatrix::Zero(c, c)};
  for_each_aligned(predictions, labels, [&](const ClassPrediction& p, int label) {
    check_class(p, c);
    ++out.counts(label, p.predicted);
  });
  return out;
}

std::optional<ConfusedPair> worst_confused_pair(const ConfusionMatrix& confusion) {
  std::optional<ConfusedPair> best;
  const int c = confusion.classes();
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      const std::int64_t errors = confusion.counts(i, j) + confusion.counts(j, i);
      if (errors > 0 && (!best || errors > best->errors)) best = ConfusedPair{i, j, errors};
    }
  }
  return best;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("line fit needs at least two paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0) throw PreconditionError("line fit needs two distinct x values");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, my - slope * mx, r2};
}

}  // namespace pairlike
