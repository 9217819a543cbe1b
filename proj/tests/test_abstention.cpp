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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pairlike/abstention.hpp"
#include "pairlike/coupling.hpp"
#include "pairlike/datagen.hpp"

using namespace pairlike;
using Catch::Approx;

namespace {

PairwiseLikelihoodMatrix off_manifold() {
  return PairwiseLikelihoodMatrix::from_upper(3, std::vector<double>{0.6, 0.6, 0.6});
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_CASE("distances vanish on the manifold", "[abstention]") {
  CHECK(distance_wlw(PairwiseLikelihoodMatrix::uniform(4)) == 0.0);
  CHECK(distance_bc(PairwiseLikelihoodMatrix::uniform(4)) == 0.0);
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int c = 2 + trial % 9;
    const auto r = theta_map(Posterior(oracle::random_posterior(gen, c)));
    REQUIRE(distance_wlw(r) <= 1e-12);
    REQUIRE(distance_bc(r) <= 1e-12);
  }
}

TEST_CASE("distances are positive off the manifold", "[abstention]") {
  // delta2 at the brute-force minimizer and the least-squares residual norm
  // (tests/oracles/derive_fixtures.py).
  CHECK(distance_wlw(off_manifold()) == Approx(0.0027221172022799684).epsilon(1e-6));
  CHECK(distance_bc(off_manifold()) == Approx(0.23409538931324936).epsilon(1e-12));
  CHECK(distance_bc(off_manifold()) ==
        Approx(oracle::bradley_terry_least_squares(off_manifold().entries()).residual_norm)
            .epsilon(1e-12));
}

TEST_CASE("distance_wlw is delta2 at the coupled posterior", "[abstention]") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const PairwiseLikelihoodMatrix r(oracle::random_pairwise(gen, 3 + trial % 5));
    CHECK(distance_wlw(r) == delta2_value(r, couple_wlw(r)));
  }
}

TEST_CASE("distance_bc needs stabilization on 0/1 entries", "[abstention]") {
  const auto r = PairwiseLikelihoodMatrix::from_upper(3, std::vector<double>{1.0, 0.5, 0.5});
  CHECK_THROWS_AS(distance_bc(r), SingularityError);
  const CouplingConfig clip = CouplingConfig::defaults(Method::kBayesCovariant);
  CHECK(sureness_distance(r, clip) == distance_bc(stabilize_clip(r, clip.tau)));
  CouplingConfig none = clip;
  none.stabilization = Stabilization::kNone;
  CHECK_THROWS_AS(sureness_distance(r, none), SingularityError);
}

TEST_CASE("sureness_distance with drop measures the reduced matrix", "[abstention]") {
  CouplingConfig drop = CouplingConfig::defaults(Method::kBayesCovariant);
  drop.stabilization = Stabilization::kDropClasses;
  const auto lone = PairwiseLikelihoodMatrix::from_upper(3, std::vector<double>{1.0, 1.0, 0.5});
  CHECK(sureness_distance(lone, drop) == 0.0);
  const auto r = PairwiseLikelihoodMatrix::from_upper(4, std::vector<double>{0.6, 0.6, 1.0, 0.6,
                                                                             1.0, 1.0});
  // Class 3 is dropped; the survivors form the off-manifold fixture.
  CHECK(sureness_distance(r, drop) == Approx(0.23409538931324936).epsilon(1e-12));
}

TEST_CASE("calibrate_threshold uses the nearest rank", "[abstention]") {
  std::vector<double> d(100);
  for (int i = 0; i < 100; ++i) d[i] = 100 - i;
  CHECK(calibrate_threshold(d, 0.95) == 95.0);
  CHECK(calibrate_threshold(d, 0.5) == 50.0);
  CHECK(calibrate_threshold(d, 0.001) == 1.0);
  CHECK(calibrate_threshold(d, 0.999) == 100.0);

  const std::vector<double> zeros(37, 0.0);
  CHECK(calibrate_threshold(zeros, 0.3) == 0.0);
  CHECK(calibrate_threshold(zeros, 0.99) == 0.0);

  const std::vector<double> three{3.0, 1.0, 2.0};
  CHECK(calibrate_threshold(three, 1.0 / 3) == 1.0);
  CHECK(calibrate_threshold(three, 0.34) == 2.0);

  CHECK_THROWS_AS(calibrate_threshold(d, 1.0), PreconditionError);
  CHECK_THROWS_AS(calibrate_threshold(d, 0.0), PreconditionError);
  CHECK_THROWS_AS(calibrate_threshold(std::vector<double>{}, 0.5), PreconditionError);
}

TEST_CASE("abstaining_predict applies the threshold rule", "[abstention]") {
  const CouplingConfig config = CouplingConfig::defaults(Method::kBayesCovariant);
  const Posterior p{0.2, 0.3, 0.5};

  const AbstainingResult on = abstaining_predict(theta_map(p), config, 1e-6);
  REQUIRE_FALSE(on.abstained());
  CHECK((on.posterior->probs() - p.probs()).cwiseAbs().maxCoeff() < 1e-12);

  const AbstainingResult off = abstaining_predict(off_manifold(), config, 0.2);
  CHECK(off.abstained());
  CHECK(off.distance == Approx(0.23409538931324936));
  CHECK_FALSE(abstaining_predict(off_manifold(), config, 0.25).abstained());

  CHECK_THROWS_AS(abstaining_predict(off_manifold(), config,
                                     std::numeric_limits<double>::infinity()),
                  PreconditionError);
  CHECK_THROWS_AS(abstaining_predict(off_manifold(), config, -1.0), PreconditionError);
  CHECK_THROWS_AS(abstaining_predict(off_manifold(), config,
                                     std::numeric_limits<double>::quiet_NaN()),
                  PreconditionError);
}

TEST_CASE("median distance grows with theta noise", "[abstention][property]") {
  std::mt19937_64 gen(19);
  double previous = -1.0;
  std::uint64_t seed = 0;
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    std::vector<double> d;
    for (int k = 0; k < 200; ++k) {
      const Posterior p(oracle::random_posterior(gen, 5));
      d.push_back(distance_bc(perturb_manifold(p, s, seed++)));
    }
    const double m = median(d);
    CHECK(m > previous);
    if (s == 0.0) CHECK(m <= 1e-12);
    previous = m;
  }
}
