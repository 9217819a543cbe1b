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

#include "pairlike/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/LU>

namespace pairlike {
namespace {

constexpr double kClampWindow = 1e-9;
constexpr double kMinImprovement = 1e-14;
constexpr int kMaxDescentIterations = 1'000'000;

void check_class(int classes, int k, const char* what) {
  if (k < 0 || k >= classes) {
    throw PreconditionError(std::string(what) + " " + std::to_string(k) +
                            " outside [0, " + std::to_string(classes) + ")");
  }
}

// Normalizes a non-negative vector with positive sum into a Posterior.
Posterior normalized(Eigen::VectorXd v) {
  v /= v.sum();
  return Posterior(std::move(v));
}

double quadratic_value(const Eigen::MatrixXd& a, const Eigen::VectorXd& p) {
  return p.dot(a * p);
}

}  // namespace

BinaryPrediction iia_restrict(const Posterior& p, int i, int j) {
  check_class(p.classes(), i, "class");
  check_class(p.classes(), j, "class");
  if (i == j) throw PreconditionError("iia_restrict needs two distinct classes");
  const double denom = p[i] + p[j];
  if (denom == 0.0) {
    throw SingularityError("p_" + std::to_string(i) + " + p_" + std::to_string(j) +
                           " = 0; the two-class restriction is undefined");
  }
  return BinaryPrediction(i, j, p[i] / denom);
}

PairwiseLikelihoodMatrix theta_map(const Posterior& p) {
  if (!p.strictly_positive()) {
    throw SingularityError("theta_map requires a strictly positive posterior");
  }
  const int c = p.classes();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(c, c);
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      const double denom = p[i] + p[j];
      r(i, j) = p[i] / denom;
      r(j, i) = p[j] / denom;
    }
  }
  return PairwiseLikelihoodMatrix(std::move(r));
}

Posterior reconstruct_from_column(const PairwiseLikelihoodMatrix& matrix, int j) {
  const int c = matrix.classes();
  check_class(c, j, "column");
  Eigen::VectorXd v(c);
  for (int i = 0; i < c; ++i) {
    if (i == j) {
      v[i] = 1.0;
      continue;
    }
    const double num = matrix(i, j);
    const double den = matrix(j, i);
    if (num <= 0.0 || num >= 1.0 || den <= 0.0 || den >= 1.0) {
      throw SingularityError("column " + std::to_string(j) + " has a 0/1 entry at row " +
                             std::to_string(i));
    }
    v[i] = num / den;
  }
  return normalized(std::move(v));
}

double delta2_value(const PairwiseLikelihoodMatrix& matrix, const Posterior& p) {
  const int c = matrix.classes();
  if (p.classes() != c) {
    throw StructuralError("delta2_value: matrix has " + std::to_string(c) +
                          " classes, posterior has " + std::to_string(p.classes()));
  }
  double sum = 0.0;
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      if (i == j) continue;
      const double d = matrix(i, j) * p[j] - matrix(j, i) * p[i];
      sum += d * d;
    }
  }
  return sum;
}

namespace detail {

Eigen::MatrixXd wlw_quadratic_form(const PairwiseLikelihoodMatrix& matrix) {
  const int c = matrix.classes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(c, c);
  for (int i = 0; i < c; ++i) {
    for (int s = 0; s < c; ++s) {
      if (s == i) continue;
      a(i, i) += 2.0 * matrix(s, i) * matrix(s, i);
      a(i, s) = -2.0 * matrix(i, s) * matrix(s, i);
    }
  }
  return a;
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) shift = t;
  }
  return (v.array() - shift).max(0.0).matrix();
}

Eigen::VectorXd minimize_on_simplex(const Eigen::MatrixXd& quadratic,
                                    Eigen::VectorXd start) {
  Eigen::VectorXd p = project_to_simplex(start);
  double value = quadratic_value(quadratic, p);
  double step = 1.0;
  for (int iter = 0; iter < kMaxDescentIterations; ++iter) {
    const Eigen::VectorXd gradient = 2.0 * quadratic * p;
    Eigen::VectorXd candidate;
    double candidate_value = value;
    bool accepted = false;
    for (; step > 1e-30; step *= 0.5) {
      candidate = project_to_simplex(p - step * gradient);
      candidate_value = quadratic_value(quadratic, candidate);
      if (candidate_value <= value) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const double improvement = value - candidate_value;
    p = std::move(candidate);
    value = candidate_value;
    if (improvement < kMinImprovement) break;
    step = std::min(2.0 * step, 1.0);
  }
  return p;
}

Eigen::VectorXd wlw_direct_solve(const Eigen::MatrixXd& quadratic) {
  const Eigen::Index c = quadratic.rows();
  // [ 2A  1 ] [p]   [0]
  // [ 1'  0 ] [l] = [1]
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(c + 1, c + 1);
  system.topLeftCorner(c, c) = 2.0 * quadratic;
  system.topRightCorner(c, 1).setOnes();
  system.bottomLeftCorner(1, c).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(c + 1);
  rhs[c] = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double largest = pivots.maxCoeff();
    const double rcond = largest > 0.0 ? pivots.minCoeff() / largest : 0.0;
    std::ostringstream msg;
    msg << "Wu-Lin-Weng linear system is rank deficient (rank " << lu.rank() << " of "
        << c + 1 << ", rcond " << rcond << ")";
    throw NumericalFailure(msg.str(), rcond);
  }
  return lu.solve(rhs).head(c);
}

}  // namespace detail

Posterior couple_wlw(const PairwiseLikelihoodMatrix& matrix) {
  const Eigen::MatrixXd a = detail::wlw_quadratic_form(matrix);
  Eigen::VectorXd p = detail::wlw_direct_solve(a);
  if (p.minCoeff() < -kClampWindow) {
    p = detail::minimize_on_simplex(a, std::move(p));
  } else {
    p = p.cwiseMax(0.0);
  }
  return normalized(std::move(p));
}

Eigen::VectorXd bradley_terry_potentials(const ThetaMatrix& theta) {
  return theta.entries().colwise().sum().transpose() / theta.classes();
}

Posterior couple_bc(const PairwiseLikelihoodMatrix& matrix) {
  const Eigen::VectorXd v = bradley_terry_potentials(ThetaMatrix::from_pairwise(matrix));
  Eigen::VectorXd w = (v.array() - v.maxCoeff()).exp().matrix();
  return normalized(std::move(w));
}

PairwiseLikelihoodMatrix stabilize_clip(const PairwiseLikelihoodMatrix& matrix,
                                        double tau) {
  if (!(tau > 0.0 && tau < 0.5)) throw PreconditionError("tau must lie in (0, 0.5)");
  std::vector<double> upper = matrix.upper();
  for (double& r : upper) r = std::min(1.0 - tau, std::max(tau, r));
  return PairwiseLikelihoodMatrix::from_upper(matrix.classes(), upper);
}

ReducedMatrix stabilize_drop(const PairwiseLikelihoodMatrix& matrix, double rho) {
  if (!(rho > 0.0 && rho < 0.5)) throw PreconditionError("rho must lie in (0, 0.5)");
  const int c = matrix.classes();
  ReducedMatrix out{std::nullopt, {}, c};
  for (int k = 0; k < c; ++k) {
    bool keep = true;
    for (int other = 0; other < c && keep; ++other) {
      if (other != k && matrix(k, other) < rho) keep = false;
    }
    if (keep) out.surviving.push_back(k);
  }
  if (out.surviving.empty()) {
    throw EmptyResultError("every class fell below rho; nothing left to couple");
  }
  const auto kept = static_cast<int>(out.surviving.size());
  if (kept >= 2) {
    Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(kept, kept);
    for (int a = 0; a < kept; ++a) {
      for (int b = 0; b < kept; ++b) {
        reduced(a, b) = matrix(out.surviving[a], out.surviving[b]);
      }
    }
    out.matrix.emplace(std::move(reduced));
  }
  return out;
}

Posterior extend_posterior(const Posterior& reduced, std::span<const int> surviving,
                           int classes) {
  if (static_cast<int>(surviving.size()) != reduced.classes()) {
    throw StructuralError("surviving index list does not match reduced posterior");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(classes);
  for (std::size_t k = 0; k < surviving.size(); ++k) {
    check_class(classes, surviving[k], "surviving class");
    full[surviving[k]] = reduced[static_cast<int>(k)];
  }
  return Posterior(std::move(full));
}

Posterior couple(const PairwiseLikelihoodMatrix& matrix, const CouplingConfig& config) {
  config.validate();
  const auto run = [&](const PairwiseLikelihoodMatrix& m) {
    return config.method == Method::kWuLinWeng ? couple_wlw(m) : couple_bc(m);
  };
  switch (config.stabilization) {
    case Stabilization::kNone:
      return run(matrix);
    case Stabilization::kClip:
      return run(stabilize_clip(matrix, config.tau));
    case Stabilization::kDropClasses: {
      const ReducedMatrix reduced = stabilize_drop(matrix, config.rho);
      if (!reduced.matrix) {
        return Posterior::one_hot(matrix.classes(), reduced.surviving.front());
      }
      return extend_posterior(run(*reduced.matrix), reduced.surviving, matrix.classes());
    }
  }
  return run(matrix);
}

}  // namespace pairlike
