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

#include <catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pairlike/coupling.hpp"
#include "pairlike/eval.hpp"

using namespace pairlike;
using Catch::Approx;

namespace {

std::string id(int k) { return "s" + std::to_string(k); }

LabeledBatch batch(int classes, const std::vector<int>& labels) {
  std::vector<LabeledSample> samples;
  for (std::size_t k = 0; k < labels.size(); ++k) samples.push_back({id(static_cast<int>(k)), labels[k]});
  return LabeledBatch(classes, std::move(samples));
}

std::vector<ClassPrediction> predictions(const std::vector<int>& predicted) {
  std::vector<ClassPrediction> out;
  for (std::size_t k = 0; k < predicted.size(); ++k) out.push_back({id(static_cast<int>(k)), predicted[k]});
  return out;
}

}  // namespace

TEST_CASE("argmax_predict picks the lowest index on ties", "[eval]") {
  CHECK(argmax_predict(Posterior{0.2, 0.3, 0.5}) == 2);
  CHECK(argmax_predict(Posterior{0.5, 0.5}) == 0);
  CHECK(argmax_predict(Posterior{0.1, 0.45, 0.45}) == 1);
  for (int k = 0; k < 6; ++k) CHECK(argmax_predict(Posterior::one_hot(6, k)) == k);
}

TEST_CASE("accuracy counts matches by sample id", "[eval]") {
  const auto labels = batch(3, {0, 1, 2, 1});
  CHECK(accuracy(predictions({0, 1, 2, 1}), labels) == 1.0);
  CHECK(accuracy(predictions({1, 2, 0, 0}), labels) == 0.0);
  CHECK(accuracy(predictions({0, 1, 2, 0}), labels) == 0.75);

  // Order does not matter, only ids.
  std::vector<ClassPrediction> shuffled{{id(3), 1}, {id(0), 0}, {id(2), 0}, {id(1), 1}};
  CHECK(accuracy(shuffled, labels) == 0.75);
}

TEST_CASE("accuracy rejects misaligned inputs", "[eval]") {
  const auto labels = batch(3, {0, 1, 2, 1});
  CHECK_THROWS_AS(accuracy(predictions({0, 1, 2}), labels), PreconditionError);
  std::vector<ClassPrediction> foreign{{id(0), 0}, {id(1), 1}, {id(2), 2}, {"other", 1}};
  CHECK_THROWS_AS(accuracy(foreign, labels), PreconditionError);
  std::vector<ClassPrediction> twice{{id(0), 0}, {id(0), 0}, {id(2), 2}, {id(3), 1}};
  CHECK_THROWS_AS(accuracy(twice, labels), PreconditionError);
  CHECK_THROWS_AS(accuracy(predictions({0, 1, 2, 7}), labels), PreconditionError);
}

TEST_CASE("pairwise_accuracy follows the larger probability", "[eval]") {
  const auto labels = batch(3, {0, 2, 0, 2, 0, 2, 0, 2, 0, 2});
  std::vector<PairwiseObservation> obs;
  // Seven correct: the first seven predict the label, the rest do not.
  for (int k = 0; k < 10; ++k) {
    const bool label_a = k % 2 == 0;
    const bool right = k < 7;
    obs.push_back({id(k), BinaryPrediction(0, 2, label_a == right ? 0.8 : 0.2)});
  }
  CHECK(pairwise_accuracy(obs, labels) == Approx(0.7));

  const auto one = batch(2, {0});
  const std::vector<PairwiseObservation> tie{{id(0), BinaryPrediction(0, 1, 0.5)}};
  CHECK(pairwise_accuracy(tie, one) == 1.0);
  const std::vector<PairwiseObservation> sure{{id(0), BinaryPrediction(0, 1, 0.9)}};
  CHECK(pairwise_accuracy(sure, one) == 1.0);

  const auto outside = batch(3, {1});
  const std::vector<PairwiseObservation> other{{id(0), BinaryPrediction(0, 2, 0.5)}};
  CHECK_THROWS_AS(pairwise_accuracy(other, outside), PreconditionError);
}

TEST_CASE("confusion_matrix counts true against predicted", "[eval]") {
  const auto labels = batch(3, {0, 1, 2, 1});
  const ConfusionMatrix perfect = confusion_matrix(predictions({0, 1, 2, 1}), labels);
  CHECK(perfect.counts(0, 0) == 1);
  CHECK(perfect.counts(1, 1) == 2);
  CHECK(perfect.counts(2, 2) == 1);
  CHECK(perfect.counts.sum() == perfect.counts.trace());

  const auto seven = batch(7, {0});
  const ConfusionMatrix single = confusion_matrix(predictions({6}), seven);
  CHECK(single.counts(0, 6) == 1);
  CHECK(single.total() == 1);
  CHECK(single.correct() == 0);

  const ConfusionMatrix mixed = confusion_matrix(predictions({2, 1, 0, 0}), labels);
  const ConfusionMatrix other = confusion_matrix(predictions({1, 0, 2, 1}), labels);
  for (int i = 0; i < 3; ++i) CHECK(mixed.counts.row(i).sum() == other.counts.row(i).sum());
}

TEST_CASE("worst_confused_pair on the baseline counts", "[eval]") {
  const auto pair = worst_confused_pair(fixture::baseline_confusion());
  REQUIRE(pair);
  CHECK(pair->i == 0);
  CHECK(pair->j == 6);
  CHECK(pair->errors == 177);
}

TEST_CASE("worst_confused_pair handles ties and no confusion", "[eval]") {
  CountMatrix diag = CountMatrix::Zero(4, 4);
  diag.diagonal().setConstant(5);
  CHECK_FALSE(worst_confused_pair(ConfusionMatrix{diag}).has_value());

  CountMatrix tied = diag;
  tied(3, 1) = 2;
  tied(0, 2) = 1;
  tied(2, 0) = 1;
  const auto pair = worst_confused_pair(ConfusionMatrix{tied});
  REQUIRE(pair);
  CHECK(pair->i == 0);
  CHECK(pair->j == 2);
  CHECK(pair->errors == 2);
}

TEST_CASE("accuracy equals trace over total", "[eval][property]") {
  std::mt19937_64 gen(61);
  std::uniform_int_distribution<int> cls(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> y(1 + trial), yhat(1 + trial);
    for (auto& v : y) v = cls(gen);
    for (auto& v : yhat) v = cls(gen);
    const auto labels = batch(5, y);
    const ConfusionMatrix cm = confusion_matrix(predictions(yhat), labels);
    CHECK(cm.total() == static_cast<std::int64_t>(y.size()));
    CHECK(accuracy(predictions(yhat), labels) ==
          static_cast<double>(cm.counts.trace()) / static_cast<double>(cm.total()));
    CHECK(cm.accuracy() == accuracy(predictions(yhat), labels));
  }
}

TEST_CASE("IIA pairwise accuracy agrees with argmax inside the pair", "[eval][property]") {
  std::mt19937_64 gen(67);
  const int a = 1;
  const int b = 3;
  std::vector<int> y;
  std::vector<PairwiseObservation> obs;
  std::vector<ClassPrediction> multi;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; static_cast<int>(y.size()) < 300; ++k) {
    const Posterior p(oracle::random_posterior(gen, 5));
    const int top = argmax_predict(p);
    if (top != a && top != b) continue;
    const int n = static_cast<int>(y.size());
    y.push_back(coin(gen) ? a : b);
    obs.push_back({id(n), iia_restrict(p, a, b)});
    multi.push_back({id(n), top});
  }
  const auto labels = batch(5, y);
  CHECK(pairwise_accuracy(obs, labels) == accuracy(multi, labels));
}

TEST_CASE("fit_line recovers an exact line", "[eval]") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == Approx(2.0));
  CHECK(fit.intercept == Approx(1.0));
  CHECK(fit.r_squared == Approx(1.0));
  const std::vector<double> flat{2.0, 2.0, 2.0, 2.0};
  CHECK_THROWS_AS(fit_line(flat, y), PreconditionError);
}
