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
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "graspkit/convex_hull.hpp"
#include "graspkit/error.hpp"

namespace graspkit {

struct OracleResult {
  bool contains = false;           // origin in the hull (non-strict)
  bool strictly_contains = false;  // origin in the interior
  std::optional<double> distance;  // min facet offset when strictly inside
  int affine_rank = 0;
};

namespace oracle_detail {

// The oracle deliberately shares no code with the quickhull/LP path: rank via
// SVD of the centered point matrix, hyperplanes via generalized cross
// products over all d-subsets. Exponential time, testing only.

inline int svd_affine_rank(const std::vector<Eigen::VectorXd>& pts, int dim,
                           double eps, Eigen::MatrixXd* basis_out,
                           Eigen::VectorXd* mean_out) {
  const int n = static_cast<int>(pts.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(n);
  Eigen::MatrixXd centered(dim, n);
  for (int j = 0; j < n; ++j) centered.col(j) = pts[j] - mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullU);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > eps) ++rank;
  }
  if (basis_out) *basis_out = svd.matrixU().leftCols(rank);
  if (mean_out) *mean_out = mean;
  return rank;
}

/// Normal of the hyperplane through d points via the generalized cross
/// product of the d-1 edge vectors (cofactor expansion). Returns a zero
/// vector for affinely dependent subsets.
inline Eigen::VectorXd subset_normal(const std::vector<Eigen::VectorXd>& pts,
                                     const std::vector<int>& idx, int d) {
  Eigen::MatrixXd edges(d - 1, d);
  for (int i = 1; i < d; ++i) {
    edges.row(i - 1) = (pts[idx[i]] - pts[idx[0]]).transpose();
  }
  Eigen::VectorXd normal(d);
  Eigen::MatrixXd minor(d - 1, d - 1);
  for (int j = 0; j < d; ++j) {
    int at = 0;
    for (int col = 0; col < d; ++col) {
      if (col == j) continue;
      minor.col(at++) = edges.col(col);
    }
    const double det = (d == 1) ? 1.0 : minor.determinant();
    normal[j] = (j % 2 == 0) ? det : -det;
  }
  return normal;
}

inline OracleResult enumerate_facets(const std::vector<Eigen::VectorXd>& pts,
                                     int d, double tol) {
  const int n = static_cast<int>(pts.size());
  OracleResult result;
  result.affine_rank = d;

  // 1-D hulls are an interval; handle directly.
  if (d == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    result.contains = lo <= tol && hi >= -tol;
    result.strictly_contains = lo < -tol && hi > tol;
    if (result.contains) result.distance = std::min(-lo, hi);
    return result;
  }

  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;

  bool any_support = false;
  double min_offset = std::numeric_limits<double>::infinity();
  bool contains = true;

  while (true) {
    Eigen::VectorXd normal = subset_normal(pts, idx, d);
    double edge_scale = 0.0;
    for (int i = 1; i < d; ++i) {
      edge_scale = std::max(edge_scale, (pts[idx[i]] - pts[idx[0]]).norm());
    }
    const double nn = normal.norm();
    if (nn > 1e-10 * std::max(1.0, std::pow(edge_scale, d - 1))) {
      normal /= nn;
      double c = 0.0;
      for (int i = 0; i < d; ++i) c += normal.dot(pts[idx[i]]);
      c /= d;
      double smin = std::numeric_limits<double>::infinity();
      double smax = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        const double s = normal.dot(pts[j]) - c;
        smin = std::min(smin, s);
        smax = std::max(smax, s);
      }
      if (smax <= tol) {  // supporting with outward normal
        any_support = true;
        min_offset = std::min(min_offset, c);
        if (c < -tol) contains = false;
      }
      if (smin >= -tol) {  // supporting with the opposite orientation
        any_support = true;
        min_offset = std::min(min_offset, -c);
        if (-c < -tol) contains = false;
      }
    }

    // next d-combination of {0..n-1}
    int pos = d - 1;
    while (pos >= 0 && idx[pos] == n - d + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }

  if (!any_support) {
    throw NumericalFailure("brute_force_oracle: no supporting hyperplane found");
  }
  result.contains = contains;
  result.strictly_contains = contains && min_offset > tol;
  if (contains) result.distance = min_offset;
  return result;
}

}  // namespace oracle_detail

/// Exponential-time hull oracle: enumerates every d-subset of the points,
/// keeps the hyperplanes that support the set, and decides containment and
/// boundary distance from the supporting offsets. Lower-dimensional inputs
/// are projected onto their affine hull and re-enumerated there (strict
/// containment is then false by definition). Size-capped; testing only.
inline OracleResult brute_force_oracle(const PointSet& ps) {
  ps.validate();
  if (static_cast<int>(ps.points.size()) > 60 || ps.dim > 6) {
    throw TooLarge("brute_force_oracle: capped at 60 points, dim 6");
  }
  const double scale = std::max(1.0, ps.scale());
  const double tol = 1e-9 * scale;

  std::vector<Eigen::VectorXd> pts = ps.points;
  int d = ps.dim;

  Eigen::MatrixXd basis;
  Eigen::VectorXd mean;
  const int rank = oracle_detail::svd_affine_rank(pts, d, tol, &basis, &mean);

  if (rank == d) {
    OracleResult r = oracle_detail::enumerate_facets(pts, d, tol);
    r.affine_rank = rank;
    return r;
  }

  // Degenerate: the hull lives in a lower-dimensional flat. If the origin is
  // off that flat it cannot be contained; otherwise decide within the flat.
  OracleResult result;
  result.affine_rank = rank;
  result.strictly_contains = false;
  const Eigen::VectorXd origin_residual = -mean - basis * (basis.transpose() * (-mean));
  if (origin_residual.norm() > tol) {
    result.contains = false;
    return result;
  }
  if (rank == 0) {
    result.contains = true;  // single point coincident with the origin
    return result;
  }
  std::vector<Eigen::VectorXd> projected;
  projected.reserve(pts.size());
  const Eigen::VectorXd origin_coords = basis.transpose() * (-mean);
  for (const auto& p : pts) {
    projected.push_back(basis.transpose() * (p - mean) - origin_coords);
  }
  OracleResult inner = oracle_detail::enumerate_facets(projected, rank, tol);
  result.contains = inner.contains;
  return result;
}

}  // namespace graspkit
