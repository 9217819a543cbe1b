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

#include "pairlike/core.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace pairlike {

std::size_t pair_index(int classes, int i, int j) {
  if (i < 0 || j >= classes || i >= j) {
    throw PreconditionError("pair_index requires 0 <= i < j < c");
  }
  const auto c = static_cast<std::size_t>(classes);
  const auto a = static_cast<std::size_t>(i);
  // Rows 0..i-1 contribute (c-1) + (c-2) + ... + (c-i) pairs.
  return a * (2 * c - a - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

// ---------------------------------------------------------------------------
// Posterior

Posterior::Posterior(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw StructuralError("posterior needs at least 2 classes");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    const double v = probs_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      std::ostringstream msg;
      msg << "posterior entry " << i << " = " << v << " outside [0, 1]";
      throw InvariantViolation(msg.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "posterior sums to " << sum << ", not 1";
    throw InvariantViolation(msg.str());
  }
}

Posterior::Posterior(std::initializer_list<double> probs)
    : Posterior(Eigen::Map<const Eigen::VectorXd>(
          probs.begin(), static_cast<Eigen::Index>(probs.size()))) {}

Posterior Posterior::uniform(int classes) {
  if (classes < 2) throw StructuralError("posterior needs at least 2 classes");
  return Posterior(Eigen::VectorXd::Constant(classes, 1.0 / classes));
}

Posterior Posterior::one_hot(int classes, int k) {
  if (classes < 2) throw StructuralError("posterior needs at least 2 classes");
  if (k < 0 || k >= classes) throw PreconditionError("one_hot index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(classes);
  v[k] = 1.0;
  return Posterior(std::move(v));
}

bool Posterior::strictly_positive() const { return (probs_.array() > 0.0).all(); }

// ---------------------------------------------------------------------------
// Validation

std::string Violation::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::kDiagonal:
      out << "diagonal entry (" << row << "," << col << ") = " << value
          << " is not 0";
      break;
    case Kind::kRange:
      out << "entry (" << row << "," << col << ") = " << value
          << " outside [0, 1]";
      break;
    case Kind::kComplement:
      out << "entries (" << row << "," << col << ") and (" << col << ","
          << row << ") sum to " << value << ", not 1";
      break;
    case Kind::kNonFinite:
      out << "entry (" << row << "," << col << ") is not finite";
      break;
  }
  return out.str();
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

ValidationReport validate_pairwise(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols()) {
    throw StructuralError("pairwise matrix must be square, got " +
                          std::to_string(entries.rows()) + "x" +
                          std::to_string(entries.cols()));
  }
  if (entries.rows() < 2) {
    throw StructuralError("pairwise matrix needs at least 2 classes");
  }
  using Kind = Violation::Kind;
  ValidationReport report;
  const int c = static_cast<int>(entries.rows());
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      const double v = entries(i, j);
      if (!std::isfinite(v)) {
        report.violations.push_back({Kind::kNonFinite, i, j, v});
      } else if (i == j) {
        if (v != 0.0) report.violations.push_back({Kind::kDiagonal, i, j, v});
      } else if (v < 0.0 || v > 1.0) {
        report.violations.push_back({Kind::kRange, i, j, v});
      }
    }
  }
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      const double s = entries(i, j) + entries(j, i);
      if (std::isfinite(s) && std::abs(s - 1.0) > kProbabilityTolerance) {
        report.violations.push_back({Kind::kComplement, i, j, s});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// PairwiseLikelihoodMatrix

PairwiseLikelihoodMatrix::PairwiseLikelihoodMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  const ValidationReport report = validate_pairwise(entries_);
  if (!report.ok()) {
    throw InvariantViolation("invalid pairwise matrix: " + report.to_string());
  }
}

PairwiseLikelihoodMatrix PairwiseLikelihoodMatrix::from_upper(
    int classes, std::span<const double> upper) {
  if (classes < 2) throw StructuralError("pairwise matrix needs at least 2 classes");
  if (upper.size() != pair_count(classes)) {
    throw StructuralError("expected " + std::to_string(pair_count(classes)) +
                          " upper-triangle entries, got " +
                          std::to_string(upper.size()));
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(classes, classes);
  std::size_t k = 0;
  for (int i = 0; i < classes; ++i) {
    for (int j = i + 1; j < classes; ++j, ++k) {
      m(i, j) = upper[k];
      m(j, i) = 1.0 - upper[k];
    }
  }
  return PairwiseLikelihoodMatrix(std::move(m));
}

PairwiseLikelihoodMatrix PairwiseLikelihoodMatrix::uniform(int classes) {
  std::vector<double> upper(pair_count(classes), 0.5);
  return from_upper(classes, upper);
}

std::vector<double> PairwiseLikelihoodMatrix::upper() const {
  std::vector<double> out;
  out.reserve(pair_count(classes()));
  for (int i = 0; i < classes(); ++i) {
    for (int j = i + 1; j < classes(); ++j) out.push_back(entries_(i, j));
  }
  return out;
}

PairwiseLikelihoodMatrix PairwiseLikelihoodMatrix::permuted(
    std::span<const int> perm) const {
  const int c = classes();
  if (static_cast<int>(perm.size()) != c) {
    throw StructuralError("permutation size does not match class count");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(c, c);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) out(perm[i], perm[j]) = entries_(i, j);
  }
  return PairwiseLikelihoodMatrix(std::move(out));
}

// ---------------------------------------------------------------------------
// ThetaMatrix

ThetaMatrix::ThetaMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
    throw StructuralError("theta matrix must be square with at least 2 classes");
  }
  const int c = classes();
  for (int i = 0; i < c; ++i) {
    if (entries_(i, i) != 0.0) throw InvariantViolation("theta diagonal must be 0");
    for (int j = i + 1; j < c; ++j) {
      if (!std::isfinite(entries_(i, j)) ||
          std::abs(entries_(i, j) + entries_(j, i)) > kProbabilityTolerance) {
        throw InvariantViolation("theta matrix is not antisymmetric at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

ThetaMatrix ThetaMatrix::from_pairwise(const PairwiseLikelihoodMatrix& matrix) {
  const int c = matrix.classes();
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(c, c);
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      const double r = matrix(i, j);
      if (r <= 0.0 || r >= 1.0) {
        throw SingularityError("log-odds map is singular at r(" + std::to_string(i) +
                               "," + std::to_string(j) + ") = " + std::to_string(r));
      }
      // log(1/r - 1) = log(r_ji) - log(r_ij); the difference form keeps
      // precision near both ends of (0, 1).
      theta(i, j) = std::log1p(-r) - std::log(r);
      theta(j, i) = -theta(i, j);
    }
  }
  return ThetaMatrix(std::move(theta));
}

std::vector<double> ThetaMatrix::upper() const {
  std::vector<double> out;
  out.reserve(pair_count(classes()));
  for (int i = 0; i < classes(); ++i) {
    for (int j = i + 1; j < classes(); ++j) out.push_back(entries_(i, j));
  }
  return out;
}

PairwiseLikelihoodMatrix ThetaMatrix::to_pairwise() const {
  const int c = classes();
  std::vector<double> upper;
  upper.reserve(pair_count(c));
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      upper.push_back(1.0 / (1.0 + std::exp(entries_(i, j))));
    }
  }
  return PairwiseLikelihoodMatrix::from_upper(c, upper);
}

// ---------------------------------------------------------------------------
// Config and enums

std::string_view to_string(Method method) {
  return method == Method::kWuLinWeng ? "wlw" : "bc";
}

std::string_view to_string(Stabilization stabilization) {
  switch (stabilization) {
    case Stabilization::kNone:
      return "none";
    case Stabilization::kClip:
      return "clip";
    case Stabilization::kDropClasses:
      return "drop";
  }
  return "none";
}

Method parse_method(std::string_view text) {
  if (text == "wlw") return Method::kWuLinWeng;
  if (text == "bc") return Method::kBayesCovariant;
  throw PreconditionError("unknown coupling method '" + std::string(text) +
                          "' (expected wlw or bc)");
}

Stabilization parse_stabilization(std::string_view text) {
  if (text == "none") return Stabilization::kNone;
  if (text == "clip") return Stabilization::kClip;
  if (text == "drop") return Stabilization::kDropClasses;
  throw PreconditionError("unknown stabilization '" + std::string(text) +
                          "' (expected none, clip or drop)");
}

CouplingConfig CouplingConfig::defaults(Method method) {
  CouplingConfig config;
  config.method = method;
  config.stabilization = method == Method::kBayesCovariant ? Stabilization::kClip
                                                           : Stabilization::kNone;
  return config;
}

void CouplingConfig::validate() const {
  if (!(tau > 0.0 && tau < 0.5)) throw PreconditionError("tau must lie in (0, 0.5)");
  if (!(rho > 0.0 && rho < 0.5)) throw PreconditionError("rho must lie in (0, 0.5)");
}

// ---------------------------------------------------------------------------
// LabeledBatch / BinaryPrediction

LabeledBatch::LabeledBatch(int classes, std::vector<LabeledSample> samples)
    : classes_(classes), samples_(std::move(samples)) {
  if (classes_ < 2) throw StructuralError("labelled batch needs at least 2 classes");
  index_.reserve(samples_.size());
  for (const auto& s : samples_) {
    if (s.label < 0 || s.label >= classes_) {
      throw InvariantViolation("label " + std::to_string(s.label) + " of sample '" +
                               s.sample_id + "' outside [0, " +
                               std::to_string(classes_) + ")");
    }
    if (!index_.emplace(s.sample_id, s.label).second) {
      throw InvariantViolation("duplicate sample id '" + s.sample_id + "'");
    }
  }
}

std::optional<int> LabeledBatch::label_of(std::string_view sample_id) const {
  const auto it = index_.find(std::string(sample_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BinaryPrediction::BinaryPrediction(int a, int b, double p)
    : class_a(a), class_b(b), prob_a(p) {
  if (a == b) throw PreconditionError("binary prediction needs two distinct classes");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvariantViolation("binary probability " + std::to_string(p) +
                             " outside [0, 1]");
  }
}

}  // namespace pairlike
