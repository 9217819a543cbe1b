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

#include "pairlike/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pairlike/coupling.hpp"
#include "pairlike/rng.hpp"

namespace pairlike {

void CorrectionPatch::add(int i, int j, double prob_i) {
  if (i == j) throw PreconditionError("patch pair needs two distinct classes");
  if (!(prob_i >= 0.0 && prob_i <= 1.0)) {
    throw PreconditionError("patch probability " + std::to_string(prob_i) +
                            " outside [0, 1]");
  }
  if (i > j) {
    std::swap(i, j);
    prob_i = 1.0 - prob_i;
  }
  for (const Entry& e : entries_) {
    if (e.i == i && e.j == j) {
      throw PreconditionError("duplicate patch pair (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
  }
  entries_.push_back({i, j, prob_i});
}

void CorrectionPatch::validate(int classes) const {
  for (const Entry& e : entries_) {
    if (e.i < 0 || e.j >= classes) {
      throw PreconditionError("patch pair (" + std::to_string(e.i) + "," +
                              std::to_string(e.j) + ") outside [0, " +
                              std::to_string(classes) + ")");
    }
  }
}

PairwiseLikelihoodMatrix partial_correct(const Posterior& p, const CorrectionPatch& patch) {
  patch.validate(p.classes());
  Eigen::MatrixXd r = theta_map(p).entries();
  for (const auto& e : patch.entries()) {
    r(e.i, e.j) = e.prob_i;
    r(e.j, e.i) = 1.0 - e.prob_i;
  }
  return PairwiseLikelihoodMatrix(std::move(r));
}

std::vector<Recombination> bootstrap_recombine(
    std::span<const PairwiseLikelihoodMatrix> sources, std::size_t n, std::uint64_t seed) {
  if (sources.size() < 2) throw PreconditionError("recombination needs at least 2 sources");
  const int c = sources.front().classes();
  for (const auto& s : sources) {
    if (s.classes() != c) {
      throw StructuralError("recombination sources disagree on the class count");
    }
  }
  std::vector<Recombination> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    SplitMix64 rng(substream_seed(seed, k));
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(c, c);
    std::vector<int> chosen;
    chosen.reserve(pair_count(c));
    for (int i = 0; i < c; ++i) {
      for (int j = i + 1; j < c; ++j) {
        const auto src = static_cast<int>(rng.below(sources.size()));
        r(i, j) = sources[src](i, j);
        r(j, i) = sources[src](j, i);
        chosen.push_back(src);
      }
    }
    out.push_back({PairwiseLikelihoodMatrix(std::move(r)), std::move(chosen)});
  }
  return out;
}

EnsembleSummary summarize_posteriors(std::span<const Posterior> posteriors,
                                     std::uint64_t seed) {
  if (posteriors.empty()) throw PreconditionError("cannot summarise zero posteriors");
  const int c = posteriors.front().classes();
  EnsembleSummary summary;
  summary.seed = seed;
  summary.n_samples = posteriors.size();
  const auto n = static_cast<double>(posteriors.size());
  std::vector<double> values(posteriors.size());
  for (int k = 0; k < c; ++k) {
    for (std::size_t s = 0; s < posteriors.size(); ++s) {
      if (posteriors[s].classes() != c) {
        throw StructuralError("posteriors disagree on the class count");
      }
      values[s] = posteriors[s][k];
    }
    std::sort(values.begin(), values.end());
    ClassSummary cs{};
    // Shifted by the smallest value, so constant inputs give an exact mean.
    double shift = 0.0;
    for (double v : values) shift += v - values.front();
    const double mean = values.front() + shift / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    cs.mean = mean;
    cs.sd = std::sqrt(ss / n);
    cs.min = values.front();
    cs.max = values.back();
    for (int d = 1; d <= 9; ++d) {
      // Nearest rank ceil(d/10 * n), computed in integers.
      const std::size_t rank = (static_cast<std::size_t>(d) * values.size() + 9) / 10;
      cs.deciles[d - 1] = values[std::max<std::size_t>(rank, 1) - 1];
    }
    summary.classes.push_back(cs);
  }
  return summary;
}

EnsembleSummary ensemble_summary(std::span<const PairwiseLikelihoodMatrix> matrices,
                                 const CouplingConfig& config, std::uint64_t seed) {
  if (matrices.empty()) throw PreconditionError("cannot summarise zero matrices");
  config.validate();
  std::vector<Posterior> coupled;
  coupled.reserve(matrices.size());
  std::vector<std::string> failures;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    try {
      coupled.push_back(couple(matrices[k], config));
    } catch (const Error& e) {
      failures.push_back("matrix " + std::to_string(k) + ": " + e.what());
    }
  }
  if (coupled.empty()) {
    throw NumericalFailure("every matrix in the ensemble failed to couple (" +
                               failures.front() + ")",
                           std::numeric_limits<double>::quiet_NaN());
  }
  EnsembleSummary summary = summarize_posteriors(coupled, seed);
  summary.excluded = failures.size();
  summary.failures = std::move(failures);
  return summary;
}

}  // namespace pairlike
