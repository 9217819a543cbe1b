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

#ifndef PAIRLIKE_DATAGEN_HPP_
#define PAIRLIKE_DATAGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pairlike/core.hpp"

namespace pairlike {

// Isotropic Gaussian classes with a shared scale.
struct BlobSpec {
  int classes = 2;
  int dim = 2;
  std::vector<Eigen::VectorXd> means;
  double scale = 1.0;
  int n_per_class = 1;
  std::uint64_t seed = 0;

  void validate() const;

  // Means at separation * e_k when dim >= classes, otherwise drawn from
  // N(0, separation^2) with a substream of `seed`.
  static BlobSpec simplex(int classes, int dim, double separation, double scale,
                          int n_per_class, std::uint64_t seed);
};

struct BlobData {
  Eigen::MatrixXd features;  // one row per sample
  LabeledBatch labels;       // ids "s000000", "s000001", ... in row order
};

// Class-major rows: all of class 0, then class 1, ... Deterministic in seed.
BlobData generate_blobs(const BlobSpec& spec);

// Exact class posterior under equal priors,
// p_k ∝ exp(-|x - mu_k|^2 / (2 scale^2)).
Posterior bayes_posterior_blobs(const BlobSpec& spec, const Eigen::VectorXd& x);

// Same, as log-probabilities (no underflow for far-away classes).
Eigen::VectorXd bayes_log_posterior_blobs(const BlobSpec& spec, const Eigen::VectorXd& x);

enum class Link { kLogit, kComplementaryLogLog };

struct GlmSpec {
  Link link = Link::kLogit;
  // Train against eps / 1 - eps instead of 0 / 1.
  bool epsilon_labels = false;
  // Defaults to 1 / (training set size).
  std::optional<double> epsilon;
  double learning_rate = 1.0;
  int max_epochs = 5000;
  double tolerance = 1e-6;
};

enum class GlmStatus { kConverged, kMaxEpochsReached };

struct GlmModel {
  Link link;
  Eigen::VectorXd weights;
  double intercept;
  GlmStatus status;
  int epochs;
  double gradient_norm;
  double epsilon_used;  // 0 when epsilon_labels is off

  // P(y = 1 | x).
  double predict(const Eigen::VectorXd& x) const;
  // The fitted probability as a two-class prediction with y = 1 mapped to
  // positive_class.
  BinaryPrediction predict_pair(const Eigen::VectorXd& x, int positive_class,
                                int negative_class) const;
};

double inverse_link(Link link, double eta);

// Full-batch gradient ascent on the mean Bernoulli log-likelihood with the
// given link. Step sizes start at learning_rate and are halved whenever a
// step would lower the likelihood. Stops when the gradient norm drops below
// tolerance (kConverged) or after max_epochs (kMaxEpochsReached, a warning,
// not an error). labels must be 0/1 with both values present.
GlmModel train_binary_glm(const Eigen::MatrixXd& features, std::span<const int> labels,
                          const GlmSpec& spec);

// theta_map(p) with i.i.d. N(0, noise_scale^2) added to the upper-triangle
// log-odds and mapped back through r = 1 / (1 + exp(theta)).
// noise_scale == 0 returns theta_map(p) exactly.
PairwiseLikelihoodMatrix perturb_manifold(const Posterior& p, double noise_scale,
                                          std::uint64_t seed);

// As perturb_manifold, starting from log-probabilities.
PairwiseLikelihoodMatrix perturb_log_posterior(const Eigen::VectorXd& log_p,
                                               double noise_scale, std::uint64_t seed);

struct RecoveryRow {
  double noise_scale;
  std::size_t samples;
  double bayes_accuracy;
  double wlw_accuracy;
  double bc_accuracy;
  std::vector<double> column_accuracy;
  double best_column_accuracy;
};

// Coupling-recovery experiment: for every blob sample, perturb the Bayes
// posterior's pairwise matrix at each noise scale, then compare the accuracy
// of both coupling methods with the argmax of every single-column
// reconstruction. Sample k at scale index s uses substream
// substream_seed(seed, s * n + k). A column that hits a 0/1 entry counts as
// a miss.
std::vector<RecoveryRow> coupling_recovery_experiment(const BlobSpec& spec,
                                                      std::span<const double> noise_scales,
                                                      std::uint64_t seed);

// A base model that is the Bayes posterior with extra log-odds noise on one
// class pair: log p_a += z/2, log p_b -= z/2, z ~ N(0, corruption^2).
struct ConfusedPairScenario {
  LabeledBatch labels;
  std::vector<std::string> sample_ids;
  std::vector<Posterior> base;
  std::vector<Posterior> bayes;
  int class_a;
  int class_b;
};

ConfusedPairScenario confused_pair_scenario(const BlobSpec& spec, int class_a,
                                            int class_b, double corruption,
                                            std::uint64_t seed);

}  // namespace pairlike

#endif  // PAIRLIKE_DATAGEN_HPP_
