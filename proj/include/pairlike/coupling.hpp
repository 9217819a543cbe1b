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

#ifndef PAIRLIKE_COUPLING_HPP_
#define PAIRLIKE_COUPLING_HPP_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pairlike/core.hpp"

namespace pairlike {

// Two-class restriction of p to the pair (i, j): p_i / (p_i + p_j).
// Throws SingularityError when p_i + p_j == 0.
BinaryPrediction iia_restrict(const Posterior& p, int i, int j);

// The map p -> R(p) with r_ij = p_i / (p_i + p_j). Requires every p_i > 0.
PairwiseLikelihoodMatrix theta_map(const Posterior& p);

// Inverts theta_map using a single column j: p_i ∝ r_ij / r_ji, p_j ∝ 1.
// Off the Bradley-Terry manifold different columns give different answers.
Posterior reconstruct_from_column(const PairwiseLikelihoodMatrix& matrix, int j);

// Sum over ordered pairs i != j of (r_ij p_j - r_ji p_i)^2.
double delta2_value(const PairwiseLikelihoodMatrix& matrix, const Posterior& p);

// Wu-Lin-Weng coupling: minimizer of delta2_value over the simplex.
//
// The stationarity conditions of the Lagrangian with the constraint
// sum(p) = 1 form a (c+1) x (c+1) linear system that is solved directly.
// Coordinates in [-1e-9, 0) are clamped to zero; anything more negative
// falls back to projected gradient descent on the simplex. A rank-deficient
// system throws NumericalFailure carrying the reciprocal condition estimate.
Posterior couple_wlw(const PairwiseLikelihoodMatrix& matrix);

// Bayes-covariant coupling: orthogonal projection of the log-odds matrix onto
// {theta_ij = v_j - v_i}, then p_k ∝ exp(v_k). Requires every off-diagonal
// entry strictly inside (0, 1).
Posterior couple_bc(const PairwiseLikelihoodMatrix& matrix);

// Potentials v of the Bradley-Terry projection, v_k = mean_i theta_ik.
// Defined up to an additive constant; this representative sums to zero.
Eigen::VectorXd bradley_terry_potentials(const ThetaMatrix& theta);

// Clamps the upper triangle into [tau, 1 - tau] and rewrites the lower
// triangle with the complements.
PairwiseLikelihoodMatrix stabilize_clip(const PairwiseLikelihoodMatrix& matrix,
                                        double tau);

struct ReducedMatrix {
  // Absent when exactly one class survives.
  std::optional<PairwiseLikelihoodMatrix> matrix;
  std::vector<int> surviving;
  int original_classes;
};

// Drops every class k with some r_kk' < rho. Throws EmptyResultError when no
// class survives.
ReducedMatrix stabilize_drop(const PairwiseLikelihoodMatrix& matrix, double rho);

// Re-embeds a posterior over the surviving classes into `classes` classes,
// filling dropped classes with zero.
Posterior extend_posterior(const Posterior& reduced, std::span<const int> surviving,
                           int classes);

// Applies the configured stabilization, then the configured method. With
// kDropClasses the method runs on the reduced matrix and the result is
// extended with zeros; a single survivor yields the one-hot posterior.
Posterior couple(const PairwiseLikelihoodMatrix& matrix, const CouplingConfig& config);

namespace detail {

// A with delta2 = p' A p: A_ii = 2 sum_{s != i} r_si^2, A_ij = -2 r_ij r_ji.
Eigen::MatrixXd wlw_quadratic_form(const PairwiseLikelihoodMatrix& matrix);

// Euclidean projection onto the probability simplex (sort-based).
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

// Projected gradient descent for p' A p on the simplex starting at `start`.
// Backtracks by halving; stops once an accepted step improves the objective
// by less than 1e-14.
Eigen::VectorXd minimize_on_simplex(const Eigen::MatrixXd& quadratic,
                                    Eigen::VectorXd start);

// Unconstrained equality-constrained stationary point of p' A p subject to
// sum(p) = 1, before any clamping.
Eigen::VectorXd wlw_direct_solve(const Eigen::MatrixXd& quadratic);

}  // namespace detail

}  // namespace pairlike

#endif  // PAIRLIKE_COUPLING_HPP_
