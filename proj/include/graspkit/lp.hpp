// Copyright 2026 The graspkit Authors
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

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "graspkit/error.hpp"

namespace graspkit {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// Dense two-phase tableau simplex for small problems:
///
///   minimize (or maximize) c^T x   subject to   A x = b,  x >= 0.
///
/// Dantzig pricing with a switch to Bland's rule after a fixed number of
/// iterations to rule out cycling. Feasibility tolerance 1e-9. Problems here
/// are tiny (a handful of rows, up to a few thousand columns), so a dense
/// tableau is the right tool.
class SimplexSolver {
 public:
  explicit SimplexSolver(double feas_eps = 1e-9) : eps_(feas_eps) {}

  LpResult solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                 const Eigen::VectorXd& c, bool maximize = false) const {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (b.size() != m || c.size() != n) {
      throw DimensionMismatch("simplex: inconsistent A, b, c dimensions");
    }

    // Tableau [A | I | b] with artificial basis; rows flipped so b >= 0.
    Eigen::MatrixXd t(m, n + m + 1);
    t.leftCols(n) = a;
    t.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    t.col(n + m) = b;
    for (int i = 0; i < m; ++i) {
      if (t(i, n + m) < 0.0) t.row(i) = -t.row(i);
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    // Phase 1: minimize the sum of artificials.
    Eigen::RowVectorXd cost1 = Eigen::RowVectorXd::Zero(n + m);
    cost1.segment(n, m).setOnes();
    Eigen::RowVectorXd red = reduced_costs(t, basis, cost1);
    if (!pivot_until_optimal(t, basis, red, n + m)) {
      throw NumericalFailure("simplex: phase 1 iteration limit");
    }
    double phase1 = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= n) phase1 += t(i, n + m);
    }
    if (phase1 > eps_) {
      return {LpStatus::Infeasible, 0.0, Eigen::VectorXd::Zero(n)};
    }

    // Remove artificials from the basis; rows that cannot be repaired are
    // redundant constraints and are dropped.
    std::vector<int> keep;
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) {
        keep.push_back(i);
        continue;
      }
      int enter = -1;
      double best = eps_;
      for (int j = 0; j < n; ++j) {
        if (std::abs(t(i, j)) > best) {
          best = std::abs(t(i, j));
          enter = j;
        }
      }
      if (enter >= 0) {
        pivot(t, basis, i, enter);
        keep.push_back(i);
      }
    }
    if (static_cast<int>(keep.size()) < m) {
      Eigen::MatrixXd t2(static_cast<int>(keep.size()), t.cols());
      std::vector<int> basis2;
      for (std::size_t r = 0; r < keep.size(); ++r) {
        t2.row(static_cast<int>(r)) = t.row(keep[r]);
        basis2.push_back(basis[keep[r]]);
      }
      t.swap(t2);
      basis.swap(basis2);
    }

    // Phase 2 on the real objective; artificial columns are frozen out by
    // restricting the entering-column scan to the structural columns.
    Eigen::RowVectorXd cost2 = Eigen::RowVectorXd::Zero(n + m);
    cost2.head(n) = maximize ? (-c).transpose() : c.transpose();
    red = reduced_costs(t, basis, cost2);
    if (!pivot_until_optimal(t, basis, red, n)) {
      throw NumericalFailure("simplex: phase 2 iteration limit");
    }
    for (int j = 0; j < n; ++j) {
      if (red[j] < -eps_) {
        // An improving column with no blocking row: unbounded.
        return {LpStatus::Unbounded, 0.0, Eigen::VectorXd::Zero(n)};
      }
    }

    LpResult result;
    result.status = LpStatus::Optimal;
    result.x = Eigen::VectorXd::Zero(n);
    const int rows = static_cast<int>(t.rows());
    for (int i = 0; i < rows; ++i) {
      if (basis[i] < n) result.x[basis[i]] = t(i, t.cols() - 1);
    }
    result.objective = c.dot(result.x);
    return result;
  }

 private:
  static Eigen::RowVectorXd reduced_costs(const Eigen::MatrixXd& t,
                                          const std::vector<int>& basis,
                                          const Eigen::RowVectorXd& cost) {
    Eigen::RowVectorXd red = cost;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double cb = cost[basis[i]];
      if (cb != 0.0) {
        red -= cb * t.row(static_cast<int>(i)).head(cost.size());
      }
    }
    return red;
  }

  static void pivot(Eigen::MatrixXd& t, std::vector<int>& basis, int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < t.rows(); ++i) {
      if (i != row && t(i, col) != 0.0) {
        t.row(i) -= t(i, col) * t.row(row);
      }
    }
    basis[row] = col;
  }

  /// Pivot until no entering column among the first `scan_cols` columns has a
  /// negative reduced cost. Returns false if the iteration cap is hit.
  bool pivot_until_optimal(Eigen::MatrixXd& t, std::vector<int>& basis,
                           Eigen::RowVectorXd& red, int scan_cols) const {
    const int m = static_cast<int>(t.rows());
    const int rhs = static_cast<int>(t.cols()) - 1;
    const std::int64_t bland_after = 2LL * (scan_cols + m) + 32;
    const std::int64_t max_iters = 200LL * (scan_cols + m) + 10000;

    for (std::int64_t iter = 0; iter < max_iters; ++iter) {
      const bool bland = iter >= bland_after;
      int enter = -1;
      double most_negative = -eps_;
      for (int j = 0; j < scan_cols; ++j) {
        if (red[j] < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = red[j];
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) > 1e-11) {
          const double ratio = t(i, rhs) / t(i, enter);
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leave >= 0 &&
               basis[i] < basis[leave])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return true;  // unbounded; detected by caller via red

      pivot(t, basis, leave, enter);
      // Update the reduced-cost row with the same elimination step.
      const double re = red[enter];
      if (re != 0.0) {
        red -= re * t.row(leave).head(red.size());
      }
    }
    return false;
  }

  double eps_;
};

inline LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c, bool maximize = false) {
  return SimplexSolver().solve(a, b, c, maximize);
}

/// Largest uniform lower bound t* on convex weights placing the origin in the
/// hull of the columns of `points`:
///
///   max t  s.t.  sum_j (b_j + t) x_j = 0,  sum_j b_j + m t = 1,  b, t >= 0.
///
/// nullopt means the origin is not in the hull at all (the t = 0 case is
/// exactly convex-combination membership). t* > 0 certifies that the origin
/// is a strictly positive convex combination of all columns, which together
/// with a full-dimensional affine hull means strict interiority.
inline std::optional<double> origin_hull_margin(const Eigen::MatrixXd& points) {
  const int d = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  Eigen::MatrixXd a(d + 1, m + 1);
  a.topLeftCorner(d, m) = points;
  a.row(d).head(m).setOnes();
  a.topRightCorner(d, 1) = points.rowwise().sum();
  a(d, m) = static_cast<double>(m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b[d] = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m + 1);
  c[m] = 1.0;
  const LpResult r = solve_lp(a, b, c, /*maximize=*/true);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.objective;
}

/// Membership of `target` in {sum_j a_j x_j : a >= 0, sum_j a_j <= 1} (the
/// hull of the columns and the origin).
inline bool point_in_hull_with_origin(const Eigen::MatrixXd& points,
                                      const Eigen::VectorXd& target) {
  const int d = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  Eigen::MatrixXd a(d + 1, m + 1);
  a.topLeftCorner(d, m) = points;
  a.topRightCorner(d, 1).setZero();
  a.row(d).head(m).setOnes();
  a(d, m) = 1.0;  // slack for sum <= 1
  Eigen::VectorXd b(d + 1);
  b.head(d) = target;
  b[d] = 1.0;
  const Eigen::VectorXd c = Eigen::VectorXd::Zero(m + 1);
  return solve_lp(a, b, c).status == LpStatus::Optimal;
}

}  // namespace graspkit
