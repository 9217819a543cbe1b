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

#ifndef PAIRLIKE_CORE_HPP_
#define PAIRLIKE_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "pairlike/errors.hpp"

namespace pairlike {

// Absolute tolerance for sum-to-one and r_ij + r_ji = 1 checks.
inline constexpr double kProbabilityTolerance = 1e-9;

// Number of unordered class pairs, (c^2 - c) / 2.
constexpr std::size_t pair_count(int classes) {
  return classes < 2 ? 0
                     : static_cast<std::size_t>(classes) *
                           static_cast<std::size_t>(classes - 1) / 2;
}

// Position of the pair (i, j), i < j, in row-major upper-triangle order:
// (0,1), (0,2), ..., (0,c-1), (1,2), ...
std::size_t pair_index(int classes, int i, int j);

// A probability distribution over c >= 2 classes. Construction rejects
// anything that does not sum to one within kProbabilityTolerance; it never
// renormalizes.
class Posterior {
 public:
  explicit Posterior(Eigen::VectorXd probs);
  Posterior(std::initializer_list<double> probs);

  static Posterior uniform(int classes);
  static Posterior one_hot(int classes, int k);

  int classes() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const Eigen::VectorXd& probs() const { return probs_; }

  bool strictly_positive() const;

 private:
  Eigen::VectorXd probs_;
};

struct Violation {
  enum class Kind { kDiagonal, kRange, kComplement, kNonFinite };
  Kind kind;
  int row;
  int col;
  double value;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks zero diagonal, entries in [0, 1] and r_ij + r_ji = 1. Throws
// StructuralError when the matrix is not square or has fewer than 2 rows;
// every other defect is reported, not thrown.
ValidationReport validate_pairwise(const Eigen::MatrixXd& entries);

// The c x c matrix R of pairwise likelihoods. Always valid once constructed.
class PairwiseLikelihoodMatrix {
 public:
  explicit PairwiseLikelihoodMatrix(Eigen::MatrixXd entries);

  // Builds from the upper triangle (pair_index order); the lower triangle is
  // set to the complements, so r_ij + r_ji = 1 holds by construction.
  static PairwiseLikelihoodMatrix from_upper(int classes,
                                             std::span<const double> upper);
  // All off-diagonal entries 0.5.
  static PairwiseLikelihoodMatrix uniform(int classes);

  int classes() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  std::vector<double> upper() const;

  // Permutes classes: result(perm[i], perm[j]) = (*this)(i, j).
  PairwiseLikelihoodMatrix permuted(std::span<const int> perm) const;

 private:
  Eigen::MatrixXd entries_;
};

// Log-odds coordinates theta_ij = log(1/r_ij - 1); antisymmetric, zero
// diagonal.
class ThetaMatrix {
 public:
  explicit ThetaMatrix(Eigen::MatrixXd entries);

  // Throws SingularityError when an off-diagonal entry is 0 or 1.
  static ThetaMatrix from_pairwise(const PairwiseLikelihoodMatrix& matrix);

  int classes() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  std::vector<double> upper() const;

  // r_ij = 1 / (1 + exp(theta_ij)). Total.
  PairwiseLikelihoodMatrix to_pairwise() const;

 private:
  Eigen::MatrixXd entries_;
};

enum class Method { kWuLinWeng, kBayesCovariant };
enum class Stabilization { kNone, kClip, kDropClasses };

std::string_view to_string(Method method);
std::string_view to_string(Stabilization stabilization);
// Accepts "wlw" / "bc" and "none" / "clip" / "drop".
Method parse_method(std::string_view text);
Stabilization parse_stabilization(std::string_view text);

struct CouplingConfig {
  Method method = Method::kWuLinWeng;
  Stabilization stabilization = Stabilization::kNone;
  double tau = 1e-3;
  double rho = 1e-3;

  // Clip for Bayes-covariant, none for Wu-Lin-Weng.
  static CouplingConfig defaults(Method method);

  // Throws PreconditionError unless 0 < tau, rho < 0.5.
  void validate() const;
};

struct LabeledSample {
  std::string sample_id;
  int label;
};

// Labelled samples with unique opaque ids and labels in [0, classes).
class LabeledBatch {
 public:
  LabeledBatch(int classes, std::vector<LabeledSample> samples);

  int classes() const { return classes_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<LabeledSample>& samples() const { return samples_; }
  std::optional<int> label_of(std::string_view sample_id) const;

 private:
  int classes_;
  std::vector<LabeledSample> samples_;
  std::unordered_map<std::string, int> index_;
};

// Two-class distribution (prob_a, 1 - prob_a) over (class_a, class_b).
struct BinaryPrediction {
  int class_a;
  int class_b;
  double prob_a;

  BinaryPrediction(int a, int b, double p);
  double prob_b() const { return 1.0 - prob_a; }
  // Higher-probability class; class_a on ties.
  int predicted() const { return prob_a >= 0.5 ? class_a : class_b; }
};

}  // namespace pairlike

#endif  // PAIRLIKE_CORE_HPP_
