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

#ifndef PAIRLIKE_ENSEMBLE_HPP_
#define PAIRLIKE_ENSEMBLE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pairlike/core.hpp"

namespace pairlike {

// Pairwise likelihoods that override the two-class restrictions of a base
// posterior. Entries are stored with i < j; add(j, i, q) is recorded as
// (i, j, 1 - q).
class CorrectionPatch {
 public:
  struct Entry {
    int i;
    int j;
    double prob_i;
  };

  void add(int i, int j, double prob_i);
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Throws PreconditionError if any index falls outside [0, classes).
  void validate(int classes) const;

 private:
  std::vector<Entry> entries_;
};

// theta_map(p) with each patched pair replaced by (q, 1 - q).
PairwiseLikelihoodMatrix partial_correct(const Posterior& p, const CorrectionPatch& patch);

struct Recombination {
  PairwiseLikelihoodMatrix matrix;
  // Source index that supplied each unordered pair, in pair_index order.
  std::vector<int> source_per_pair;
};

// n matrices, each taking every unordered pair (r_ij, r_ji) from a uniformly
// chosen source. Draw k uses the SplitMix64 substream substream_seed(seed, k)
// and consumes one below(sources) call per pair in pair_index order, so the
// output is reproducible from (sources, n, seed) alone.
std::vector<Recombination> bootstrap_recombine(
    std::span<const PairwiseLikelihoodMatrix> sources, std::size_t n, std::uint64_t seed);

struct ClassSummary {
  double mean;
  double sd;  // population standard deviation
  double min;
  double max;
  std::array<double, 9> deciles;  // nearest-rank d10 .. d90
};

struct EnsembleSummary {
  std::vector<ClassSummary> classes;
  std::size_t n_samples = 0;
  std::size_t excluded = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;  // one message per excluded matrix
};

// Couples every matrix and summarises each class's posterior across them.
// Matrices that fail to couple are excluded and counted; if all of them fail
// NumericalFailure is thrown.
EnsembleSummary ensemble_summary(std::span<const PairwiseLikelihoodMatrix> matrices,
                                 const CouplingConfig& config, std::uint64_t seed = 0);

// Same, over posteriors that were already coupled.
EnsembleSummary summarize_posteriors(std::span<const Posterior> posteriors,
                                     std::uint64_t seed = 0);

}  // namespace pairlike

#endif  // PAIRLIKE_ENSEMBLE_HPP_
