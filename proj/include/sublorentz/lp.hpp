// Copyright 2026 The Sublorentz Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense linear programming kernel (two-phase tableau simplex with
// Bland's anti-cycling rule). Sized for the handful of variables that cone
// membership, pointedness and polar-cone searches need.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace sublorentz::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  Eigen::VectorXd coeffs;
  Relation relation;
  double rhs;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

namespace detail {

class Tableau {
 public:
  Tableau(Eigen::MatrixXd a, Eigen::VectorXd b, std::vector<int> basis)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)) {}

  // Maximizes cost^T x over the current tableau, only letting columns with
  // enterable[j] == true enter the basis.
  Status Maximize(const Eigen::VectorXd& cost, const std::vector<bool>& enterable) {
    const auto m = a_.rows();
    const auto n = a_.cols();
    // Reduced costs r_j = c_B^T B^{-1} A_j - c_j; optimal when all r_j >= 0.
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      Eigen::VectorXd cb(m);
      for (Eigen::Index i = 0; i < m; ++i) cb(i) = cost(basis_[i]);
      const Eigen::RowVectorXd reduced = cb.transpose() * a_ - cost.transpose();

      int entering = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (enterable[j] && reduced(j) < -kEps) {
          entering = static_cast<int>(j);
          break;
        }
      }
      if (entering < 0) return Status::kOptimal;

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double coef = a_(i, entering);
        if (coef <= kEps) continue;
        const double ratio = b_(i) / coef;
        if (ratio < best_ratio - kEps ||
            (ratio <= best_ratio + kEps && leaving >= 0 && basis_[i] < basis_[leaving])) {
          best_ratio = ratio;
          leaving = static_cast<int>(i);
        }
      }
      if (leaving < 0) return Status::kUnbounded;
      Pivot(leaving, entering);
    }
    return Status::kOptimal;
  }

  void Pivot(Eigen::Index row, Eigen::Index col) {
    const double p = a_(row, col);
    a_.row(row) /= p;
    b_(row) /= p;
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (i == row) continue;
      const double f = a_(i, col);
      if (f == 0.0) continue;
      a_.row(i) -= f * a_.row(row);
      b_(i) -= f * b_(row);
    }
    basis_[row] = static_cast<int>(col);
  }

  void DropRow(Eigen::Index row) {
    const auto m = a_.rows();
    Eigen::MatrixXd a(m - 1, a_.cols());
    Eigen::VectorXd b(m - 1);
    std::vector<int> basis;
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == row) continue;
      a.row(k) = a_.row(i);
      b(k) = b_(i);
      basis.push_back(basis_[i]);
      ++k;
    }
    a_ = std::move(a);
    b_ = std::move(b);
    basis_ = std::move(basis);
  }

  [[nodiscard]] Eigen::VectorXd Solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(a_.cols());
    for (std::size_t i = 0; i < basis_.size(); ++i) x(basis_[i]) = b_(static_cast<Eigen::Index>(i));
    return x;
  }

  Eigen::MatrixXd& a() { return a_; }
  Eigen::VectorXd& b() { return b_; }
  std::vector<int>& basis() { return basis_; }

  static constexpr double kEps = 1e-11;
  static constexpr int kMaxIterations = 10000;

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::vector<int> basis_;
};

}  // namespace detail

/// Maximizes cost^T x subject to the given constraints and x >= 0.
inline Result Maximize(const Eigen::VectorXd& cost, const std::vector<Constraint>& constraints) {
  const auto n = cost.size();
  const auto m = static_cast<Eigen::Index>(constraints.size());

  Eigen::Index slack_count = 0;
  Eigen::Index artificial_count = 0;
  for (const auto& c : constraints) {
    Relation rel = c.relation;
    if (c.rhs < 0) {
      if (rel == Relation::kLessEqual) rel = Relation::kGreaterEqual;
      else if (rel == Relation::kGreaterEqual) rel = Relation::kLessEqual;
    }
    if (rel != Relation::kEqual) ++slack_count;
    if (rel != Relation::kLessEqual) ++artificial_count;
  }

  const Eigen::Index cols = n + slack_count + artificial_count;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, cols);
  Eigen::VectorXd b(m);
  std::vector<int> basis(static_cast<std::size_t>(m));
  std::vector<bool> is_artificial(static_cast<std::size_t>(cols), false);

  Eigen::Index next_slack = n;
  Eigen::Index next_art = n + slack_count;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& c = constraints[static_cast<std::size_t>(i)];
    if (c.coeffs.size() != n) throw std::invalid_argument("lp: constraint width mismatch");
    const double sign = c.rhs < 0 ? -1.0 : 1.0;
    Relation rel = c.relation;
    if (sign < 0) {
      if (rel == Relation::kLessEqual) rel = Relation::kGreaterEqual;
      else if (rel == Relation::kGreaterEqual) rel = Relation::kLessEqual;
    }
    a.row(i).head(n) = sign * c.coeffs.transpose();
    b(i) = sign * c.rhs;
    switch (rel) {
      case Relation::kLessEqual:
        a(i, next_slack) = 1.0;
        basis[i] = static_cast<int>(next_slack++);
        break;
      case Relation::kGreaterEqual:
        a(i, next_slack++) = -1.0;
        a(i, next_art) = 1.0;
        is_artificial[next_art] = true;
        basis[i] = static_cast<int>(next_art++);
        break;
      case Relation::kEqual:
        a(i, next_art) = 1.0;
        is_artificial[next_art] = true;
        basis[i] = static_cast<int>(next_art++);
        break;
    }
  }

  detail::Tableau t(std::move(a), std::move(b), std::move(basis));

  if (artificial_count > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (is_artificial[j]) phase1(j) = -1.0;
    }
    std::vector<bool> all(static_cast<std::size_t>(cols), true);
    t.Maximize(phase1, all);
    const double infeasibility = -phase1.dot(t.Solution());
    double scale = 1.0;
    for (const auto& c : constraints) scale = std::max(scale, std::abs(c.rhs));
    if (infeasibility > 1e-9 * scale) return {Status::kInfeasible, {}, 0.0};

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (Eigen::Index i = static_cast<Eigen::Index>(t.basis().size()) - 1; i >= 0; --i) {
      if (!is_artificial[t.basis()[i]]) continue;
      Eigen::Index pivot_col = -1;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (!is_artificial[j] && std::abs(t.a()(i, j)) > detail::Tableau::kEps) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col >= 0) t.Pivot(i, pivot_col);
      else t.DropRow(i);
    }
  }

  Eigen::VectorXd full_cost = Eigen::VectorXd::Zero(cols);
  full_cost.head(n) = cost;
  std::vector<bool> enterable(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) enterable[j] = !is_artificial[j];
  const Status st = t.Maximize(full_cost, enterable);
  if (st == Status::kUnbounded) return {Status::kUnbounded, {}, 0.0};

  Eigen::VectorXd x = t.Solution().head(n);
  return {Status::kOptimal, x, cost.dot(x)};
}

}  // namespace sublorentz::lp
