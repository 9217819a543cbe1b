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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pairlike/core.hpp"
#include "pairlike/coupling.hpp"

using namespace pairlike;
using Catch::Approx;

namespace {

Eigen::MatrixXd three_class_fixture() {
  Eigen::MatrixXd r(3, 3);
  r << 0.0, 0.4, 0.2,
       0.6, 0.0, 0.7,
       0.8, 0.3, 0.0;
  return r;
}

}  // namespace

TEST_CASE("validate_pairwise accepts a matrix satisfying the complement rule", "[core]") {
  const ValidationReport report = validate_pairwise(three_class_fixture());
  CHECK(report.ok());
  CHECK_NOTHROW(PairwiseLikelihoodMatrix(three_class_fixture()));
}

TEST_CASE("validate_pairwise reports the broken complement", "[core]") {
  Eigen::MatrixXd r = three_class_fixture();
  r(1, 0) = 0.7;  // 0.4 + 0.7 != 1
  const ValidationReport report = validate_pairwise(r);
  REQUIRE(report.violations.size() == 1);
  const Violation& v = report.violations.front();
  CHECK(v.kind == Violation::Kind::kComplement);
  CHECK(v.row == 0);
  CHECK(v.col == 1);
  CHECK(v.value == Approx(1.1));
  CHECK_THROWS_AS(PairwiseLikelihoodMatrix(r), InvariantViolation);
}

TEST_CASE("validate_pairwise reports a nonzero diagonal", "[core]") {
  Eigen::MatrixXd r = three_class_fixture();
  r(2, 2) = 0.1;
  const ValidationReport report = validate_pairwise(r);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations.front().kind == Violation::Kind::kDiagonal);
  CHECK(report.violations.front().row == 2);
}

TEST_CASE("validate_pairwise reports out-of-range and non-finite entries", "[core]") {
  Eigen::MatrixXd r = three_class_fixture();
  r(0, 1) = -0.2;
  r(1, 0) = 1.2;
  r(0, 2) = std::nan("");
  const ValidationReport report = validate_pairwise(r);
  int range = 0, nonfinite = 0;
  for (const auto& v : report.violations) {
    if (v.kind == Violation::Kind::kRange) ++range;
    if (v.kind == Violation::Kind::kNonFinite) ++nonfinite;
  }
  CHECK(range == 2);
  CHECK(nonfinite == 1);
}

TEST_CASE("validate_pairwise separates structural errors from violations", "[core]") {
  CHECK_THROWS_AS(validate_pairwise(Eigen::MatrixXd::Zero(2, 3)), StructuralError);
  CHECK_THROWS_AS(validate_pairwise(Eigen::MatrixXd::Zero(1, 1)), StructuralError);
}

TEST_CASE("validate_pairwise never mutates its input", "[core]") {
  Eigen::MatrixXd r = three_class_fixture();
  r(0, 0) = 3.0;
  const Eigen::MatrixXd copy = r;
  (void)validate_pairwise(r);
  CHECK(r == copy);
}

TEST_CASE("Posterior rejects rather than renormalizes", "[core]") {
  CHECK_NOTHROW(Posterior{0.2, 0.3, 0.5});
  CHECK_THROWS_AS((Posterior{0.2, 0.3, 0.6}), InvariantViolation);
  CHECK_THROWS_AS((Posterior{-0.1, 0.6, 0.5}), InvariantViolation);
  CHECK_THROWS_AS(Posterior{1.0}, StructuralError);
  // Within the 1e-9 absolute tolerance.
  CHECK_NOTHROW(Posterior{0.5, 0.5 + 5e-10});
  CHECK_THROWS_AS((Posterior{0.5, 0.5 + 5e-9}), InvariantViolation);
}

TEST_CASE("pair_index enumerates the upper triangle row by row", "[core]") {
  std::size_t expected = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) CHECK(pair_index(6, i, j) == expected++);
  }
  CHECK(pair_count(6) == expected);
  CHECK(pair_count(10) == 45);
}

TEST_CASE("ThetaMatrix of a valid interior matrix is antisymmetric", "[core][property]") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int c = 2 + trial % 9;
    const auto r = PairwiseLikelihoodMatrix(oracle::random_pairwise(gen, c, 1e-6, 1 - 1e-6));
    const ThetaMatrix theta = ThetaMatrix::from_pairwise(r);
    for (int i = 0; i < c; ++i) {
      CHECK(theta(i, i) == 0.0);
      for (int j = 0; j < c; ++j) {
        REQUIRE(std::abs(theta(i, j) + theta(j, i)) <= 1e-9);
      }
    }
    // and maps back
    const auto back = theta.to_pairwise();
    CHECK((back.entries() - r.entries()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("ThetaMatrix rejects 0/1 entries", "[core]") {
  const auto r = PairwiseLikelihoodMatrix::from_upper(2, std::vector<double>{1.0});
  CHECK_THROWS_AS(ThetaMatrix::from_pairwise(r), SingularityError);
}

TEST_CASE("theta_map output passes validation exactly", "[core][property]") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int c = 2 + trial % 14;
    const Posterior p(oracle::random_posterior(gen, c, 1e-8));
    const auto r = theta_map(p);
    CHECK(validate_pairwise(r.entries()).ok());
  }
}

TEST_CASE("CouplingConfig bounds tau and rho", "[core]") {
  CouplingConfig c = CouplingConfig::defaults(Method::kBayesCovariant);
  CHECK(c.stabilization == Stabilization::kClip);
  CHECK(c.tau == 1e-3);
  CHECK(CouplingConfig::defaults(Method::kWuLinWeng).stabilization == Stabilization::kNone);
  c.tau = 0.5;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c.tau = 1e-3;
  c.rho = 0.0;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  CHECK(parse_method("bc") == Method::kBayesCovariant);
  CHECK_THROWS_AS(parse_method("kl"), PreconditionError);
  CHECK(parse_stabilization("drop") == Stabilization::kDropClasses);
}

TEST_CASE("LabeledBatch enforces label range and unique ids", "[core]") {
  CHECK_NOTHROW(LabeledBatch(3, {{"a", 0}, {"b", 2}}));
  CHECK_THROWS_AS(LabeledBatch(3, {{"a", 0}, {"b", 3}}), InvariantViolation);
  CHECK_THROWS_AS(LabeledBatch(3, {{"a", 0}, {"a", 1}}), InvariantViolation);
  const LabeledBatch batch(3, {{"x", 1}});
  CHECK(batch.label_of("x") == 1);
  CHECK_FALSE(batch.label_of("y").has_value());
}

TEST_CASE("BinaryPrediction keeps two distinct classes", "[core]") {
  const BinaryPrediction b(0, 6, 0.25);
  CHECK(b.prob_b() == 0.75);
  CHECK(b.predicted() == 6);
  CHECK(BinaryPrediction(0, 6, 0.5).predicted() == 0);
  CHECK_THROWS_AS(BinaryPrediction(1, 1, 0.5), PreconditionError);
  CHECK_THROWS_AS(BinaryPrediction(0, 1, 1.5), InvariantViolation);
}
