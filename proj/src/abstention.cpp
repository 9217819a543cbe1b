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

#include "pairlike/abstention.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairlike/coupling.hpp"

namespace pairlike {

double distance_wlw(const PairwiseLikelihoodMatrix& matrix) {
  return delta2_value(matrix, couple_wlw(matrix));
}

double distance_bc(const PairwiseLikelihoodMatrix& matrix) {
  const ThetaMatrix theta = ThetaMatrix::from_pairwise(matrix);
  const Eigen::VectorXd v = bradley_terry_potentials(theta);
  double sum = 0.0;
  for (int i = 0; i < theta.classes(); ++i) {
    for (int j = i + 1; j < theta.classes(); ++j) {
      const double residual = theta(i, j) - (v[j] - v[i]);
      sum += residual * residual;
    }
  }
  return std::sqrt(sum);
}

double sureness_distance(const PairwiseLikelihoodMatrix& matrix,
                         const CouplingConfig& config) {
  config.validate();
  const auto measure = [&](const PairwiseLikelihoodMatrix& m) {
    return config.method == Method::kWuLinWeng ? distance_wlw(m) : distance_bc(m);
  };
  switch (config.stabilization) {
    case Stabilization::kNone:
      return measure(matrix);
    case Stabilization::kClip:
      return measure(stabilize_clip(matrix, config.tau));
    case Stabilization::kDropClasses: {
      const ReducedMatrix reduced = stabilize_drop(matrix, config.rho);
      return reduced.matrix ? measure(*reduced.matrix) : 0.0;
    }
  }
  return measure(matrix);
}

double calibrate_threshold(std::span<const double> in_distribution, double quantile) {
  if (in_distribution.empty()) {
    throw PreconditionError("cannot calibrate a threshold from no distances");
  }
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw PreconditionError("quantile must lie in the open interval (0, 1)");
  }
  std::vector<double> sorted(in_distribution.begin(), in_distribution.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  // The small slack keeps q * n that should be an integer (0.95 * 100) from
  // rounding up to the next rank.
  auto rank = static_cast<std::size_t>(std::ceil(quantile * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

AbstainingResult abstaining_predict(const PairwiseLikelihoodMatrix& matrix,
                                    const CouplingConfig& config, double threshold) {
  if (!std::isfinite(threshold) || threshold < 0.0) {
    throw PreconditionError("abstention threshold must be finite and non-negative");
  }
  const double distance = sureness_distance(matrix, config);
  if (distance > threshold) return {std::nullopt, distance};
  return {couple(matrix, config), distance};
}

}  // namespace pairlike
