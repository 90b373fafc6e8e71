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
#include <cmath>
#include <limits>
#include <vector>

#include "graspkit/error.hpp"

namespace graspkit {

struct MinNormResult {
  double distance = 0.0;
  Eigen::VectorXd point;  // nearest point of the hull to the origin
};

/// Nearest point of conv(columns of `points`) to the origin, by Wolfe's
/// active-set method. The corral (active vertex set) is kept affinely
/// independent; each major cycle adds the vertex minimizing x . p and minor
/// cycles restore positive weights. Terminates when x . (p - x) >= -tol for
/// every column p, which bounds the distance error by tol / |x|.
inline MinNormResult min_norm_point(const Eigen::MatrixXd& points,
                                    double tol = 1e-12) {
  const int d = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  if (m == 0) throw DimensionMismatch("min_norm_point: empty point set");

  // Start from the column of smallest norm.
  int start = 0;
  double best = points.col(0).squaredNorm();
  for (int j = 1; j < m; ++j) {
    const double s = points.col(j).squaredNorm();
    if (s < best) {
      best = s;
      start = j;
    }
  }
  std::vector<int> corral{start};
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x = points.col(start);

  const double scale2 = std::max(1.0, best);
  const int max_major = 8 * m + 256;

  for (int major = 0; major < max_major; ++major) {
    // Linear minimization oracle: the vertex most opposed to x.
    int enter = 0;
    double min_dot = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      const double dj = x.dot(points.col(j));
      if (dj < min_dot) {
        min_dot = dj;
        enter = j;
      }
    }
    if (x.squaredNorm() - min_dot <= tol * scale2) break;
    bool already = false;
    for (int id : corral) {
      if (id == enter) {
        already = true;
        break;
      }
    }
    if (already) break;  // numerically stalled

    corral.push_back(enter);
    weights.conservativeResize(weights.size() + 1);
    weights[weights.size() - 1] = 0.0;

    // Minor cycles: move to the affine minimizer, pruning until feasible.
    for (int minor = 0; minor < 4 * d + 16; ++minor) {
      const int k = static_cast<int>(corral.size());
      Eigen::MatrixXd gram(k + 1, k + 1);
      for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
          gram(a, b) = gram(b, a) = points.col(corral[a]).dot(points.col(corral[b]));
        }
        gram(a, k) = gram(k, a) = 1.0;
      }
      gram(k, k) = 0.0;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs[k] = 1.0;
      const Eigen::VectorXd sol = gram.fullPivLu().solve(rhs);
      const Eigen::VectorXd v = sol.head(k);
      if (!v.allFinite()) {
        // Affinely dependent corral: drop the newest vertex and stop.
        corral.pop_back();
        weights.conservativeResize(weights.size() - 1);
        const double wsum = weights.sum();
        if (wsum > 0.0) weights /= wsum;
        break;
      }

      if (v.minCoeff() > 1e-12) {
        weights = v;
        break;
      }
      // Step from weights toward v up to the first vanishing weight.
      double theta = 1.0;
      for (int a = 0; a < k; ++a) {
        if (v[a] <= 1e-12 && weights[a] > v[a]) {
          theta = std::min(theta, weights[a] / (weights[a] - v[a]));
        }
      }
      weights = (1.0 - theta) * weights + theta * v;
      // Prune zeroed vertices.
      std::vector<int> next_corral;
      std::vector<double> next_weights;
      for (int a = 0; a < k; ++a) {
        if (weights[a] > 1e-12) {
          next_corral.push_back(corral[a]);
          next_weights.push_back(weights[a]);
        }
      }
      if (next_corral.empty()) {
        next_corral.push_back(corral[0]);
        next_weights.push_back(1.0);
      }
      corral = std::move(next_corral);
      weights = Eigen::Map<Eigen::VectorXd>(next_weights.data(),
                                            static_cast<Eigen::Index>(next_weights.size()));
    }

    x.setZero(d);
    for (std::size_t a = 0; a < corral.size(); ++a) {
      x += weights[static_cast<Eigen::Index>(a)] * points.col(corral[a]);
    }
  }

  MinNormResult result;
  result.point = x;
  result.distance = x.norm();
  return result;
}

/// Euclidean distance from the origin to the hull of the columns: zero (up to
/// the solver tolerance) when the origin is inside.
inline double hull_distance_to_origin(const Eigen::MatrixXd& points) {
  return min_norm_point(points).distance;
}

}  // namespace graspkit
