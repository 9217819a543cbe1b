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

#ifndef PAIRLIKE_ABSTENTION_HPP_
#define PAIRLIKE_ABSTENTION_HPP_

#include <optional>
#include <span>
#include <string>

#include "pairlike/core.hpp"

namespace pairlike {

// How far one sample's pairwise matrix sits from the Bradley-Terry manifold.
struct SurenessScore {
  std::string sample_id;
  Method method;
  double distance;
};

// delta2 at the Wu-Lin-Weng minimizer. Zero exactly on the manifold.
double distance_wlw(const PairwiseLikelihoodMatrix& matrix);

// Euclidean norm of the log-odds upper triangle minus its projection onto
// {theta_ij = v_j - v_i}. Throws SingularityError on 0/1 entries; run
// stabilize_clip first, or use sureness_distance with a clip config.
double distance_bc(const PairwiseLikelihoodMatrix& matrix);

// Method-dispatching distance that applies the config's stabilization first,
// the same way couple() does. With kDropClasses the distance is measured on
// the reduced matrix (zero when a single class survives).
double sureness_distance(const PairwiseLikelihoodMatrix& matrix,
                         const CouplingConfig& config);

// Nearest-rank empirical quantile: the ceil(q * n)-th smallest distance.
// Requires a non-empty list and q in (0, 1).
double calibrate_threshold(std::span<const double> in_distribution, double quantile);

struct AbstainingResult {
  std::optional<Posterior> posterior;  // empty when abstaining
  double distance;

  bool abstained() const { return !posterior.has_value(); }
};

// Abstains when sureness_distance(matrix, config) > threshold, otherwise
// couples. The threshold must be finite and non-negative.
AbstainingResult abstaining_predict(const PairwiseLikelihoodMatrix& matrix,
                                    const CouplingConfig& config, double threshold);

}  // namespace pairlike

#endif  // PAIRLIKE_ABSTENTION_HPP_
