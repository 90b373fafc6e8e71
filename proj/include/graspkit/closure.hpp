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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graspkit/contact.hpp"
#include "graspkit/convex_hull.hpp"
#include "graspkit/error.hpp"
#include "graspkit/grasp.hpp"
#include "graspkit/lp.hpp"
#include "graspkit/rng.hpp"

namespace graspkit {

/// First-order linearization of the contact gap functions: one
/// frictionless-type wrench column [n_i; (c_i - o) x n_i] per contact.
struct GapLinearization {
  Eigen::MatrixXd normal_wrenches;  // 6 x n_c
};

inline GapLinearization gap_linearization(const GraspRecord& record) {
  record.validate();
  GapLinearization gap;
  gap.normal_wrenches.resize(6, static_cast<Eigen::Index>(record.contacts.size()));
  for (std::size_t i = 0; i < record.contacts.size(); ++i) {
    const Contact& c = record.contacts[i];
    const Vec3 lever = c.position - record.torque_origin;
    gap.normal_wrenches.col(static_cast<Eigen::Index>(i))
        << c.frame.normal, lever.cross(c.frame.normal);
  }
  return gap;
}

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Task ellipsoid {w : w^T Q w + w^T a <= beta^2} with Q positive definite.
struct TaskEllipsoid {
  Eigen::Matrix<double, 6, 6> q = Eigen::Matrix<double, 6, 6>::Identity();
  Vec6 a = Vec6::Zero();
};

/// Aggregate grasp-quality report. Diagnostics carry the satisfied grasp
/// properties named by the benchmark vocabulary ("Force Closure",
/// "Form Closure"). Moments mix N and N*m units; values are reported raw
/// unless a moment scale is configured.
struct QualityReport {
  bool force_closure = false;
  bool form_closure_first_order = false;
  bool somov_possible = false;
  double q1 = 0.0;
  double q_inf = 0.0;
  double delta = 0.0;
  MonteCarloEstimate nu;
  std::optional<MonteCarloEstimate> mu;  // present when a task was supplied
  double form_measure = 0.0;
  int rank_g = 0;
  std::vector<std::string> diagnostics;
};

namespace closure_detail {

inline Eigen::MatrixXd scaled_moments(Eigen::MatrixXd m, double moment_scale) {
  if (moment_scale != 1.0) m.bottomRows(3) /= moment_scale;
  return m;
}

inline int matrix_rank(const Eigen::MatrixXd& m, double rel_eps = 1e-9) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double threshold = rel_eps * std::max(sv[0], 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > threshold) ++rank;
  }
  return rank;
}

/// Shared interior decision + boundary distance for a wrench point set:
/// q = min facet offset when the origin is strictly inside, else 0.
inline double hull_quality(const Eigen::MatrixXd& points) {
  PointSet ps = PointSet::from_matrix(points);
  if (ps.scale() <= 0.0) return 0.0;
  if (!contains_origin(ps, /*strict=*/true)) return 0.0;
  try {
    return boundary_distance(ps);
  } catch (const OriginOutside&) {
    // LP margin and facet offsets disagree within tolerance of the boundary.
    return 0.0;
  }
}

/// All Minkowski-sum selections sum_i w_{i, j_i}, one elementary wrench per
/// contact. Throws CombinatorialCap when the selection count exceeds `cap`.
inline Eigen::MatrixXd minkowski_points(const std::vector<std::vector<Vec6>>& per_contact,
                                        std::int64_t cap) {
  std::int64_t total = 1;
  for (const auto& list : per_contact) {
    total *= static_cast<std::int64_t>(list.size());
    if (total > cap || total <= 0) {
      throw CombinatorialCap("Minkowski enumeration of " +
                             std::to_string(per_contact.size()) +
                             " contacts exceeds cap " + std::to_string(cap));
    }
  }
  Eigen::MatrixXd points(6, total);
  std::vector<std::size_t> odometer(per_contact.size(), 0);
  for (std::int64_t s = 0; s < total; ++s) {
    Vec6 sum = Vec6::Zero();
    for (std::size_t i = 0; i < per_contact.size(); ++i) {
      sum += per_contact[i][odometer[i]];
    }
    points.col(s) = sum;
    for (std::size_t i = 0; i < per_contact.size(); ++i) {
      if (++odometer[i] < per_contact[i].size()) break;
      odometer[i] = 0;
    }
  }
  return points;
}

}  // namespace closure_detail

/// Somov's necessary condition: fewer than seven contacts can never achieve
/// form closure of a generic 3-D object. True merely means "possible".
inline bool somov_precheck(const GraspRecord& record) {
  return record.contacts.size() >= 7;
}

struct FormClosureResult {
  bool closed = false;
  double measure = 0.0;  // LP optimum; ranking value
  int rank = 0;          // rank of the normal-wrench matrix
};

/// First-order form-closure test on the gap linearization W_n:
///
///   maximize d  s.t.  W_n l = 0,  l_i >= d,  sum_i l_i = n_c.
///
/// closed iff rank(W_n) = 6 and the optimum is positive, i.e. the normal
/// wrenches positively span wrench space. The optimum is the quantitative
/// ranking measure; it is 0 when the LP has no solution meeting the
/// normalization (e.g. a single contact).
inline FormClosureResult form_closure_first_order(const GraspRecord& record) {
  const GapLinearization gap = gap_linearization(record);
  const Eigen::MatrixXd& w = gap.normal_wrenches;
  const int nc = static_cast<int>(w.cols());

  FormClosureResult result;
  result.rank = closure_detail::matrix_rank(w);

  // Variables: slack weights b_j >= 0 and d = u - v with u, v >= 0.
  Eigen::MatrixXd a(7, nc + 2);
  a.topLeftCorner(6, nc) = w;
  a.row(6).head(nc).setOnes();
  const Vec6 wsum = w.rowwise().sum();
  a.block<6, 1>(0, nc) = wsum;
  a(6, nc) = static_cast<double>(nc);
  a.block<6, 1>(0, nc + 1) = -wsum;
  a(6, nc + 1) = -static_cast<double>(nc);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(7);
  b[6] = static_cast<double>(nc);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nc + 2);
  c[nc] = 1.0;
  c[nc + 1] = -1.0;

  const LpResult lp = solve_lp(a, b, c, /*maximize=*/true);
  if (lp.status == LpStatus::Optimal) {
    result.measure = lp.objective;
  }
  result.closed = result.rank == 6 && result.measure > 1e-9;
  return result;
}

/// Force closure: rank(G) = 6 (necessary) and the origin strictly inside the
/// hull of the elementary wrenches (LP backend).
inline bool force_closure(const GraspRecord& record, const ConeDiscretization& disc) {
  const GraspMatrix g = build_grasp_matrix(record);
  if (closure_detail::matrix_rank(g.columns) < 6) return false;
  const WrenchSet set = build_wrench_set(record, disc);
  return contains_origin(PointSet::from_matrix(set.flat), /*strict=*/true);
}

/// Facet-enumeration backend of the same decision: the hull of the
/// elementary wrenches is full-dimensional with all facet offsets positive.
inline bool force_closure_by_hull(const GraspRecord& record,
                                  const ConeDiscretization& disc) {
  const WrenchSet set = build_wrench_set(record, disc);
  const PointSet ps = PointSet::from_matrix(set.flat);
  const HullResult hull = convex_hull(ps);
  if (!hull.full_dimensional) return false;
  return hull.min_offset() > 1e-9 * std::max(1.0, ps.scale());
}

/// Ferrari-Canny L1 metric: distance from the origin to the boundary of the
/// hull of the union of all elementary wrenches; 0 without force closure.
inline double quality_q1(const GraspRecord& record, const ConeDiscretization& disc) {
  const WrenchSet set = build_wrench_set(record, disc);
  return closure_detail::hull_quality(set.flat);
}

/// Ferrari-Canny L-infinity metric: distance from the origin to the boundary
/// of the hull of the Minkowski sum of the per-contact elementary-wrench
/// sets; 0 without closure. Fails loudly above the enumeration cap.
inline double quality_qinf(const GraspRecord& record, const ConeDiscretization& disc,
                           std::int64_t minkowski_cap = 1000000) {
  const WrenchSet set = build_wrench_set(record, disc);
  const Eigen::MatrixXd points =
      closure_detail::minkowski_points(set.per_contact, minkowski_cap);
  return closure_detail::hull_quality(points);
}

/// Smallest singular value of the grasp matrix; 0 when rank-deficient.
inline double quality_delta(const GraspRecord& record) {
  const GraspMatrix g = build_grasp_matrix(record);
  if (g.columns.cols() < 6) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.columns);
  return svd.singularValues()[5];
}

/// Monte Carlo estimate of the wrench-space volume measure: intensities l
/// are drawn uniformly in the unit n-ball, rejected unless every per-contact
/// block lies in its friction cone, and mapped through G. The reported value
/// is sqrt(det(sample covariance)) of the image points, a relative volume
/// proxy (comparable only across equal sampling budgets); the error term is
/// the half-sample split difference. Deterministic per seed.
inline MonteCarloEstimate quality_nu(const GraspRecord& record, int samples,
                                     std::uint64_t seed) {
  if (samples < 1000) {
    throw DimensionMismatch("quality_nu requires at least 1000 samples");
  }
  const GraspMatrix g = build_grasp_matrix(record);
  const int n = static_cast<int>(g.columns.cols());
  Rng rng(seed);

  std::vector<Vec6> image;
  image.reserve(samples / 4);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd l = rng.ball_vector(n);
    bool inside = true;
    for (std::size_t i = 0; i < record.contacts.size() && inside; ++i) {
      const int begin = g.contact_spans[i].first;
      const FrictionModel& model = record.contacts[i].model;
      Vec3 local_force = Vec3::Zero();
      double torsion = 0.0;
      switch (model.kind) {
        case ContactKind::Frictionless:
          local_force[2] = l[begin];
          break;
        case ContactKind::Hard:
          local_force << l[begin], l[begin + 1], l[begin + 2];
          break;
        case ContactKind::Soft:
          local_force << l[begin], l[begin + 1], l[begin + 2];
          torsion = l[begin + 3];
          break;
      }
      inside = cone_contains(model, local_force, torsion);
    }
    if (inside) image.push_back(g.columns * l);
  }

  auto covariance_volume = [](const std::vector<Vec6>& pts) {
    if (pts.size() < 8) return 0.0;
    Vec6 mean = Vec6::Zero();
    for (const Vec6& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Zero();
    for (const Vec6& p : pts) {
      const Vec6 d = p - mean;
      cov += d * d.transpose();
    }
    cov /= static_cast<double>(pts.size() - 1);
    return std::sqrt(std::max(0.0, cov.determinant()));
  };

  MonteCarloEstimate est;
  est.value = covariance_volume(image);
  std::vector<Vec6> half_a, half_b;
  for (std::size_t i = 0; i < image.size(); ++i) {
    (i % 2 == 0 ? half_a : half_b).push_back(image[i]);
  }
  est.std_error = 0.5 * std::abs(covariance_volume(half_a) - covariance_volume(half_b));
  return est;
}

/// Task-oriented measure: the largest beta whose task ellipsoid fits in the
/// discretized reachable wrench set {sum_j a_j w_j : a >= 0, sum a_j <= 1}
/// (unit total intensity over the cone edges). Bisection on beta with
/// LP membership of sampled ellipsoid boundary points; deterministic per
/// seed. The error term combines the bisection resolution with a half-sample
/// sensitivity. The beta^2 bound with the linear term w^T a is handled by
/// completing the square (center -Q^-1 a / 2).
inline MonteCarloEstimate quality_mu_task(const GraspRecord& record,
                                          const ConeDiscretization& disc,
                                          const TaskEllipsoid& task, int samples,
                                          std::uint64_t seed) {
  if ((task.q - task.q.transpose()).lpNorm<Eigen::Infinity>() >
      1e-9 * std::max(1.0, task.q.lpNorm<Eigen::Infinity>())) {
    throw NotPositiveDefinite("task ellipsoid Q must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(task.q);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw NotPositiveDefinite("task ellipsoid Q must be positive definite");
  }
  const Eigen::Matrix<double, 6, 6> q_inv_sqrt =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      eig.eigenvectors().transpose();
  const Vec6 q_inv_a = task.q.ldlt().solve(task.a);
  const Vec6 center = -0.5 * q_inv_a;
  const double c0 = 0.25 * task.a.dot(q_inv_a);

  const WrenchSet set = build_wrench_set(record, disc);
  const Eigen::MatrixXd& reachable = set.flat;

  Rng rng(seed);
  std::vector<Vec6> directions;
  directions.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    directions.push_back(q_inv_sqrt * rng.unit_vector(6));
  }

  auto fits = [&](double beta, std::size_t count) {
    const double radius = std::sqrt(beta * beta + c0);
    for (std::size_t i = 0; i < count; ++i) {
      const Vec6 w = center + radius * directions[i];
      if (!point_in_hull_with_origin(reachable, w)) return false;
    }
    return true;
  };

  auto bisect = [&](std::size_t count) {
    if (!fits(0.0, count)) return 0.0;
    double lo = 0.0;
    double hi = 1e-3;
    int guard = 0;
    while (fits(hi, count)) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 80) {
        throw NumericalFailure("quality_mu_task: unbounded reachable set");
      }
    }
    while (hi - lo > 1e-4 * std::max(1.0, lo)) {
      const double mid = 0.5 * (lo + hi);
      (fits(mid, count) ? lo : hi) = mid;
    }
    return lo;
  };

  MonteCarloEstimate est;
  est.value = bisect(directions.size());
  const double half = bisect(directions.size() / 2);
  est.std_error = std::max(1e-4 * std::max(1.0, est.value), half - est.value);
  return est;
}

struct AnalyzeOptions {
  ConeDiscretization disc;
  double moment_scale = 1.0;  // divide moments by this characteristic length
  int nu_samples = 5000;
  int mu_samples = 512;
  std::uint64_t seed = 0;
  std::optional<TaskEllipsoid> task;
  std::int64_t minkowski_cap = 1000000;
};

/// Full grasp analysis. force_closure and q1 are decided from the same
/// strict-containment test of the same wrench set, so q1 > 0 iff
/// force_closure by construction.
inline QualityReport analyze(const GraspRecord& record, const AnalyzeOptions& options) {
  record.validate();
  options.disc.validate();
  const double rho = options.moment_scale;
  if (!(rho > 0.0)) {
    throw DimensionMismatch("moment scale must be positive");
  }

  QualityReport report;
  report.somov_possible = somov_precheck(record);

  const FormClosureResult form = form_closure_first_order(record);
  report.form_closure_first_order = form.closed;
  report.form_measure = form.measure;

  const GraspMatrix g = build_grasp_matrix(record);
  const Eigen::MatrixXd g_scaled = closure_detail::scaled_moments(g.columns, rho);
  report.rank_g = closure_detail::matrix_rank(g_scaled);
  if (g_scaled.cols() >= 6) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g_scaled);
    report.delta = svd.singularValues()[5];
  }

  const WrenchSet set = build_wrench_set(record, options.disc);
  const Eigen::MatrixXd union_scaled = closure_detail::scaled_moments(set.flat, rho);
  report.q1 = closure_detail::hull_quality(union_scaled);
  report.force_closure = report.rank_g == 6 && report.q1 > 0.0;

  auto per_contact_scaled = set.per_contact;
  if (rho != 1.0) {
    for (auto& list : per_contact_scaled) {
      for (Vec6& w : list) w.tail<3>() /= rho;
    }
  }
  const Eigen::MatrixXd minkowski =
      closure_detail::minkowski_points(per_contact_scaled, options.minkowski_cap);
  report.q_inf = closure_detail::hull_quality(minkowski);

  report.nu = quality_nu(record, options.nu_samples, options.seed);
  if (options.task) {
    report.mu = quality_mu_task(record, options.disc, *options.task,
                                options.mu_samples, options.seed);
  }

  if (report.force_closure) report.diagnostics.push_back("Force Closure");
  if (report.form_closure_first_order) report.diagnostics.push_back("Form Closure");
  return report;
}

}  // namespace graspkit
