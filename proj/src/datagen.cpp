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

#include "pairlike/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pairlike/coupling.hpp"
#include "pairlike/eval.hpp"
#include "pairlike/rng.hpp"

namespace pairlike {
namespace {

std::string sample_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%06zu", index);
  return buf;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd w = (logits.array() - logits.maxCoeff()).exp().matrix();
  return w / w.sum();
}

// log p and log(1 - p) for the given link, stable in both tails.
struct LogProbs {
  double log_p;
  double log_q;
};

LogProbs log_probs(Link link, double eta) {
  if (link == Link::kLogit) {
    // log sigmoid(eta) = -softplus(-eta)
    const auto softplus = [](double t) {
      return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
    };
    return {-softplus(-eta), -softplus(eta)};
  }
  const double e = std::exp(eta);
  return {std::log(-std::expm1(-e)), -e};
}

// d log-likelihood / d eta for target t.
double score(Link link, double eta, double target) {
  if (link == Link::kLogit) return target - inverse_link(link, eta);
  const double e = std::exp(eta);
  const double p = -std::expm1(-e);
  // (t - p) * e^eta / p, with e^eta / p -> 1 as eta -> -inf.
  const double ratio = p > 0.0 ? e / p : 1.0;
  return (target - p) * ratio;
}

double mean_log_likelihood(Link link, const Eigen::VectorXd& eta,
                           const Eigen::VectorXd& target) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < eta.size(); ++k) {
    const LogProbs lp = log_probs(link, eta[k]);
    const double t = target[k];
    // 0 * -inf is 0 here: a hard target never pays for the other tail.
    if (t > 0.0) total += t * lp.log_p;
    if (t < 1.0) total += (1.0 - t) * lp.log_q;
  }
  return total / static_cast<double>(eta.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// Blobs

void BlobSpec::validate() const {
  if (classes < 2) throw PreconditionError("blob spec needs at least 2 classes");
  if (dim < 1) throw PreconditionError("blob spec needs dim >= 1");
  if (n_per_class < 1) throw PreconditionError("blob spec needs n_per_class >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw PreconditionError("blob scale must be positive");
  }
  if (static_cast<int>(means.size()) != classes) {
    throw PreconditionError("blob spec needs one mean per class");
  }
  for (const auto& m : means) {
    if (m.size() != dim) throw PreconditionError("blob mean has the wrong dimension");
  }
}

BlobSpec BlobSpec::simplex(int classes, int dim, double separation, double scale,
                           int n_per_class, std::uint64_t seed) {
  BlobSpec spec;
  spec.classes = classes;
  spec.dim = dim;
  spec.scale = scale;
  spec.n_per_class = n_per_class;
  spec.seed = seed;
  if (classes >= 2 && dim >= classes) {
    for (int k = 0; k < classes; ++k) {
      Eigen::VectorXd m = Eigen::VectorXd::Zero(dim);
      m[k] = separation;
      spec.means.push_back(std::move(m));
    }
  } else if (classes >= 2 && dim >= 1) {
    SplitMix64 rng(substream_seed(seed, std::numeric_limits<std::uint64_t>::max()));
    for (int k = 0; k < classes; ++k) {
      Eigen::VectorXd m(dim);
      for (int d = 0; d < dim; ++d) m[d] = separation * rng.normal();
      spec.means.push_back(std::move(m));
    }
  }
  spec.validate();
  return spec;
}

BlobData generate_blobs(const BlobSpec& spec) {
  spec.validate();
  const std::size_t n = static_cast<std::size_t>(spec.classes) *
                        static_cast<std::size_t>(spec.n_per_class);
  Eigen::MatrixXd features(static_cast<Eigen::Index>(n), spec.dim);
  std::vector<LabeledSample> samples;
  samples.reserve(n);
  SplitMix64 rng(spec.seed);
  std::size_t row = 0;
  for (int k = 0; k < spec.classes; ++k) {
    for (int s = 0; s < spec.n_per_class; ++s, ++row) {
      for (int d = 0; d < spec.dim; ++d) {
        features(static_cast<Eigen::Index>(row), d) =
            spec.means[k][d] + spec.scale * rng.normal();
      }
      samples.push_back({sample_name(row), k});
    }
  }
  return {std::move(features), LabeledBatch(spec.classes, std::move(samples))};
}

Eigen::VectorXd bayes_log_posterior_blobs(const BlobSpec& spec, const Eigen::VectorXd& x) {
  spec.validate();
  if (x.size() != spec.dim) throw StructuralError("feature point has the wrong dimension");
  Eigen::VectorXd logits(spec.classes);
  const double denom = 2.0 * spec.scale * spec.scale;
  for (int k = 0; k < spec.classes; ++k) {
    logits[k] = -(x - spec.means[k]).squaredNorm() / denom;
  }
  const double top = logits.maxCoeff();
  const double lse = top + std::log((logits.array() - top).exp().sum());
  return logits.array() - lse;
}

Posterior bayes_posterior_blobs(const BlobSpec& spec, const Eigen::VectorXd& x) {
  Eigen::VectorXd p = bayes_log_posterior_blobs(spec, x).array().exp();
  return Posterior(p / p.sum());
}

// ---------------------------------------------------------------------------
// GLM

double inverse_link(Link link, double eta) {
  if (link == Link::kLogit) return 1.0 / (1.0 + std::exp(-eta));
  return -std::expm1(-std::exp(eta));
}

double GlmModel::predict(const Eigen::VectorXd& x) const {
  return inverse_link(link, weights.dot(x) + intercept);
}

BinaryPrediction GlmModel::predict_pair(const Eigen::VectorXd& x, int positive_class,
                                        int negative_class) const {
  return BinaryPrediction(positive_class, negative_class, predict(x));
}

GlmModel train_binary_glm(const Eigen::MatrixXd& features, std::span<const int> labels,
                          const GlmSpec& spec) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (static_cast<Eigen::Index>(labels.size()) != n || n == 0) {
    throw PreconditionError("GLM needs one 0/1 label per feature row");
  }
  bool has0 = false, has1 = false;
  for (int y : labels) {
    if (y == 0) has0 = true;
    else if (y == 1) has1 = true;
    else throw PreconditionError("GLM labels must be 0 or 1");
  }
  if (!has0 || !has1) throw PreconditionError("GLM training needs both classes present");
  if (!(spec.learning_rate > 0.0) || spec.max_epochs < 1 || !(spec.tolerance > 0.0)) {
    throw PreconditionError("GLM needs positive learning rate, epochs and tolerance");
  }

  double eps = 0.0;
  if (spec.epsilon_labels) {
    eps = spec.epsilon.value_or(1.0 / static_cast<double>(n));
    if (!(eps > 0.0 && eps < 0.5)) throw PreconditionError("epsilon must lie in (0, 0.5)");
  }
  Eigen::VectorXd target(n);
  for (Eigen::Index k = 0; k < n; ++k) target[k] = labels[k] == 1 ? 1.0 - eps : eps;

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double b = 0.0;
  const auto linear = [&](const Eigen::VectorXd& ww, double bb) {
    return Eigen::VectorXd((features * ww).array() + bb);
  };

  Eigen::VectorXd eta = linear(w, b);
  double objective = mean_log_likelihood(spec.link, eta, target);
  double step = spec.learning_rate;
  GlmModel model{spec.link, w, b, GlmStatus::kMaxEpochsReached, 0, 0.0, eps};

  for (int epoch = 1; epoch <= spec.max_epochs; ++epoch) {
    Eigen::VectorXd s(n);
    for (Eigen::Index k = 0; k < n; ++k) s[k] = score(spec.link, eta[k], target[k]);
    const Eigen::VectorXd grad_w = features.transpose() * s / static_cast<double>(n);
    const double grad_b = s.mean();
    const double norm = std::sqrt(grad_w.squaredNorm() + grad_b * grad_b);
    model.epochs = epoch - 1;
    model.gradient_norm = norm;
    if (norm < spec.tolerance) {
      model.status = GlmStatus::kConverged;
      break;
    }
    bool moved = false;
    for (int halvings = 0; halvings < 60; ++halvings, step *= 0.5) {
      const Eigen::VectorXd w_next = w + step * grad_w;
      const double b_next = b + step * grad_b;
      const Eigen::VectorXd eta_next = linear(w_next, b_next);
      const double next = mean_log_likelihood(spec.link, eta_next, target);
      if (std::isfinite(next) && next >= objective) {
        w = w_next;
        b = b_next;
        eta = eta_next;
        objective = next;
        moved = true;
        break;
      }
    }
    model.epochs = epoch;
    if (!moved) break;
    step = std::min(step * 2.0, spec.learning_rate);
  }
  model.weights = w;
  model.intercept = b;
  return model;
}

// ---------------------------------------------------------------------------
// Perturbation and synthetic experiments

PairwiseLikelihoodMatrix perturb_log_posterior(const Eigen::VectorXd& log_p,
                                               double noise_scale, std::uint64_t seed) {
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw PreconditionError("noise scale must be finite and non-negative");
  }
  const int c = static_cast<int>(log_p.size());
  if (c < 2) throw StructuralError("posterior needs at least 2 classes");
  SplitMix64 rng(seed);
  std::vector<double> upper;
  upper.reserve(pair_count(c));
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      // theta_ij = log(1/r_ij - 1) = log p_j - log p_i on the manifold.
      const double theta = log_p[j] - log_p[i] + noise_scale * rng.normal();
      upper.push_back(1.0 / (1.0 + std::exp(theta)));
    }
  }
  return PairwiseLikelihoodMatrix::from_upper(c, upper);
}

PairwiseLikelihoodMatrix perturb_manifold(const Posterior& p, double noise_scale,
                                          std::uint64_t seed) {
  if (!p.strictly_positive()) {
    throw SingularityError("perturb_manifold requires a strictly positive posterior");
  }
  if (noise_scale == 0.0) return theta_map(p);
  return perturb_log_posterior(p.probs().array().log().matrix(), noise_scale, seed);
}

std::vector<RecoveryRow> coupling_recovery_experiment(const BlobSpec& spec,
                                                      std::span<const double> noise_scales,
                                                      std::uint64_t seed) {
  const BlobData data = generate_blobs(spec);
  const auto n = static_cast<std::size_t>(data.features.rows());
  const int c = spec.classes;
  std::vector<Eigen::VectorXd> log_posteriors;
  log_posteriors.reserve(n);
  std::size_t bayes_hits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    log_posteriors.push_back(
        bayes_log_posterior_blobs(spec, data.features.row(static_cast<Eigen::Index>(k)).transpose()));
    Eigen::Index best;
    log_posteriors.back().maxCoeff(&best);
    if (best == data.labels.samples()[k].label) ++bayes_hits;
  }

  std::vector<RecoveryRow> rows;
  for (std::size_t s = 0; s < noise_scales.size(); ++s) {
    std::size_t wlw_hits = 0, bc_hits = 0;
    std::vector<std::size_t> column_hits(static_cast<std::size_t>(c), 0);
    for (std::size_t k = 0; k < n; ++k) {
      const int label = data.labels.samples()[k].label;
      const PairwiseLikelihoodMatrix r = perturb_log_posterior(
          log_posteriors[k], noise_scales[s], substream_seed(seed, s * n + k));
      if (argmax_predict(couple_wlw(r)) == label) ++wlw_hits;
      if (argmax_predict(couple_bc(stabilize_clip(r, 1e-3))) == label) ++bc_hits;
      for (int j = 0; j < c; ++j) {
        try {
          if (argmax_predict(reconstruct_from_column(r, j)) == label) ++column_hits[j];
        } catch (const SingularityError&) {
        }
      }
    }
    RecoveryRow row;
    row.noise_scale = noise_scales[s];
    row.samples = n;
    const auto frac = [n](std::size_t hits) {
      return static_cast<double>(hits) / static_cast<double>(n);
    };
    row.bayes_accuracy = frac(bayes_hits);
    row.wlw_accuracy = frac(wlw_hits);
    row.bc_accuracy = frac(bc_hits);
    for (std::size_t hits : column_hits) row.column_accuracy.push_back(frac(hits));
    row.best_column_accuracy =
        *std::max_element(row.column_accuracy.begin(), row.column_accuracy.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

ConfusedPairScenario confused_pair_scenario(const BlobSpec& spec, int class_a,
                                            int class_b, double corruption,
                                            std::uint64_t seed) {
  if (class_a == class_b || class_a < 0 || class_b < 0 || class_a >= spec.classes ||
      class_b >= spec.classes) {
    throw PreconditionError("confused pair must be two distinct valid classes");
  }
  if (!(corruption >= 0.0)) throw PreconditionError("corruption must be non-negative");
  BlobData data = generate_blobs(spec);
  ConfusedPairScenario out{data.labels, {}, {}, {}, class_a, class_b};
  const auto n = static_cast<std::size_t>(data.features.rows());
  SplitMix64 rng(seed);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::VectorXd log_p = bayes_log_posterior_blobs(
        spec, data.features.row(static_cast<Eigen::Index>(k)).transpose());
    Eigen::VectorXd noisy = log_p;
    const double z = corruption * rng.normal();
    noisy[class_a] += 0.5 * z;
    noisy[class_b] -= 0.5 * z;
    out.sample_ids.push_back(data.labels.samples()[k].sample_id);
    out.bayes.emplace_back(softmax(log_p));
    out.base.emplace_back(softmax(noisy));
  }
  return out;
}

}  // namespace pairlike
