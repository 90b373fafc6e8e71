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
#include <cmath>
#include <vector>

#include "graspkit/error.hpp"
#include "graspkit/rigid.hpp"

namespace graspkit {

enum class ContactKind { Frictionless, Hard, Soft };

/// Coulomb friction model at a point contact.
///
/// Frictionless transmits only a pushing normal force (f_n >= 0). Hard adds
/// tangential force bounded by sqrt(f1^2 + f2^2) <= mu * f_n. Soft further
/// adds torsion about the normal bounded by |tau| <= gamma * f_n. The paper
/// convention writes the torsion bound one-sided; we use the double-sided
/// bound since torsion can act in either sense.
struct FrictionModel {
  ContactKind kind = ContactKind::Hard;
  double mu = 0.5;      // dimensionless, Hard/Soft
  double gamma = 0.0;   // meters, Soft only

  static FrictionModel frictionless() { return {ContactKind::Frictionless, 0.0, 0.0}; }
  static FrictionModel hard(double mu) { return {ContactKind::Hard, mu, 0.0}; }
  static FrictionModel soft(double mu, double gamma) { return {ContactKind::Soft, mu, gamma}; }

  /// Wrench-basis column count: 1 frictionless, 3 hard, 4 soft.
  int wrench_dim() const {
    switch (kind) {
      case ContactKind::Frictionless: return 1;
      case ContactKind::Hard: return 3;
      case ContactKind::Soft: return 4;
    }
    return 0;
  }
};

/// A single point contact: position (m), right-handed frame with inward
/// normal, and the friction model at the contact.
struct Contact {
  Vec3 position = Vec3::Zero();
  TangentFrame frame;
  FrictionModel model;
};

/// Friction-pyramid discretization. `edge_count` is the number of pyramid
/// edges (k >= 3); `include_torsion` controls whether soft contacts emit
/// torsion levels {-gamma, 0, +gamma} in addition to the pure-force edges.
struct ConeDiscretization {
  int edge_count = 8;
  bool include_torsion = true;

  void validate() const {
    if (edge_count < 3) {
      throw BadDiscretization("cone discretization requires at least 3 edges, got " +
                              std::to_string(edge_count));
    }
  }
};

/// Friction-cone membership for a force expressed in the contact frame as
/// (f1, f2, f_n) with tangential components first. `local_torsion` is the
/// moment intensity about the normal (soft contacts only; must vanish for
/// the other kinds). A small scale-relative slack absorbs roundoff so that
/// forces constructed on the cone boundary test as members.
inline bool cone_contains(const FrictionModel& model, const Vec3& local_force,
                          double local_torsion = 0.0) {
  const double f1 = local_force[0];
  const double f2 = local_force[1];
  const double fn = local_force[2];
  const double eps = 1e-12 * (1.0 + local_force.norm() + std::abs(local_torsion));
  if (fn < -eps) return false;
  const double ft = std::hypot(f1, f2);
  switch (model.kind) {
    case ContactKind::Frictionless:
      return ft <= eps && std::abs(local_torsion) <= eps;
    case ContactKind::Hard:
      return ft <= model.mu * fn + eps && std::abs(local_torsion) <= eps;
    case ContactKind::Soft:
      return ft <= model.mu * fn + eps &&
             std::abs(local_torsion) <= model.gamma * fn + eps;
  }
  return false;
}

/// Pyramid edge directions in world coordinates, normalized to unit normal
/// component: e_j = n + mu * (cos(2 pi j / k) t1 + sin(2 pi j / k) t2).
/// Frictionless contacts return the single normal direction.
inline std::vector<Vec3> cone_edges(const FrictionModel& model,
                                    const TangentFrame& frame,
                                    const ConeDiscretization& disc) {
  if (model.kind == ContactKind::Frictionless) {
    return {frame.normal};
  }
  disc.validate();
  const int k = disc.edge_count;
  std::vector<Vec3> edges;
  edges.reserve(k);
  for (int j = 0; j < k; ++j) {
    const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(k);
    edges.push_back(frame.normal +
                    model.mu * (std::cos(theta) * frame.t1 + std::sin(theta) * frame.t2));
  }
  return edges;
}

/// 6 x d wrench basis of a contact about `origin`, d in {1, 3, 4}.
///
/// Frictionless: [n; (c-o) x n]. Hard: columns for t1, t2, n. Soft: the hard
/// columns plus a pure-torsion column [0; n]. Moments follow m = (c-o) x f;
/// the paper's displayed matrices carry the opposite moment sign, which is a
/// typo against its own definition (closure and quality values are unaffected
/// by a global moment-sign flip).
inline Eigen::MatrixXd wrench_basis(const Contact& contact, const Vec3& origin) {
  const Vec3 lever = contact.position - origin;
  const int d = contact.model.wrench_dim();
  Eigen::MatrixXd basis(6, d);
  auto column = [&lever](const Vec3& dir) {
    Vec6 col;
    col << dir, lever.cross(dir);
    return col;
  };
  if (contact.model.kind == ContactKind::Frictionless) {
    basis.col(0) = column(contact.frame.normal);
    return basis;
  }
  basis.col(0) = column(contact.frame.t1);
  basis.col(1) = column(contact.frame.t2);
  basis.col(2) = column(contact.frame.normal);
  if (contact.model.kind == ContactKind::Soft) {
    Vec6 torsion;
    torsion << Vec3::Zero(), contact.frame.normal;
    basis.col(3) = torsion;
  }
  return basis;
}

/// Elementary wrenches w_{i,j} of one contact about `origin`: one wrench
/// [e_j; (c-o) x e_j] per pyramid edge. Soft contacts emit, per edge, the
/// torsion levels requested by the discretization ({-gamma, 0, +gamma} when
/// include_torsion, else only 0), each adding tau * n to the moment.
inline std::vector<Vec6> elementary_wrenches(const Contact& contact,
                                             const Vec3& origin,
                                             const ConeDiscretization& disc) {
  const Vec3 lever = contact.position - origin;
  const std::vector<Vec3> edges = cone_edges(contact.model, contact.frame, disc);

  std::vector<double> torsion_levels{0.0};
  if (contact.model.kind == ContactKind::Soft && disc.include_torsion) {
    torsion_levels = {-contact.model.gamma, 0.0, contact.model.gamma};
  }

  std::vector<Vec6> wrenches;
  wrenches.reserve(edges.size() * torsion_levels.size());
  for (const Vec3& edge : edges) {
    const Vec3 moment = lever.cross(edge);
    for (const double tau : torsion_levels) {
      Vec6 w;
      w << edge, moment + tau * contact.frame.normal;
      wrenches.push_back(w);
    }
  }
  return wrenches;
}

}  // namespace graspkit
