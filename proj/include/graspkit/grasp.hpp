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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graspkit/contact.hpp"
#include "graspkit/error.hpp"
#include "graspkit/rigid.hpp"

namespace graspkit {

/// Stored hand-approach parametrization. These are retrieval payloads for
/// grasp databases; the toolkit never realizes them kinematically.
struct ApproachParam {
  enum class Variant { Berenson, Pelossof };
  Variant variant = Variant::Berenson;

  // Berenson: approach direction, target surface point, roll about the
  // approach direction, and hand preshape.
  Vec3 approach_dir = Vec3::UnitZ();
  Vec3 target_point = Vec3::Zero();
  Eigen::VectorXd preshape;

  // Pelossof: surface coordinates, roll, finger spread.
  double eta = 0.0;
  double zeta = 0.0;
  double spread = 0.0;

  double roll = 0.0;  // shared by both variants
};

/// A multi-contact grasp: the contact list, the point about which moments
/// are taken (defaults to the object frame origin / center of mass), and
/// optional hand data. The hand Jacobian is user-supplied (6*n_c x h);
/// graspkit is hand-agnostic and never derives it from a robot model.
struct GraspRecord {
  std::vector<Contact> contacts;
  Vec3 torque_origin = Vec3::Zero();
  std::optional<Eigen::MatrixXd> hand_jacobian;
  std::optional<ApproachParam> approach;

  void validate() const {
    if (contacts.empty()) {
      throw DimensionMismatch("grasp record needs at least one contact");
    }
    if (hand_jacobian &&
        hand_jacobian->rows() != static_cast<Eigen::Index>(6 * contacts.size())) {
      throw DimensionMismatch(
          "hand Jacobian must have 6 rows per contact: expected " +
          std::to_string(6 * contacts.size()) + ", got " +
          std::to_string(hand_jacobian->rows()));
    }
  }
};

/// The grasp matrix G (6 x n, n = n_l + 3 n_f + 4 n_s) with the per-contact
/// column ranges. G maps an intensity vector l to the net object wrench G l.
struct GraspMatrix {
  Eigen::MatrixXd columns;
  std::vector<std::pair<int, int>> contact_spans;  // [begin, end) per contact

  Vec6 net_wrench(const Eigen::VectorXd& intensities) const {
    if (intensities.size() != columns.cols()) {
      throw DimensionMismatch("intensity vector length " +
                              std::to_string(intensities.size()) +
                              " does not match grasp matrix columns " +
                              std::to_string(columns.cols()));
    }
    return columns * intensities;
  }
};

/// Discretized wrench set: elementary wrenches per contact plus the flat
/// 6 x (sum_i k_i) matrix view that approximates the grasp matrix.
struct WrenchSet {
  std::vector<std::vector<Vec6>> per_contact;
  Eigen::MatrixXd flat;
  Vec3 origin = Vec3::Zero();

  std::vector<Vec6> union_wrenches() const {
    std::vector<Vec6> all;
    for (const auto& list : per_contact) {
      all.insert(all.end(), list.begin(), list.end());
    }
    return all;
  }
};

inline GraspMatrix build_grasp_matrix(const GraspRecord& record) {
  record.validate();
  int n = 0;
  for (const Contact& c : record.contacts) n += c.model.wrench_dim();
  GraspMatrix g;
  g.columns.resize(6, n);
  g.contact_spans.reserve(record.contacts.size());
  int at = 0;
  for (const Contact& c : record.contacts) {
    const Eigen::MatrixXd basis = wrench_basis(c, record.torque_origin);
    const int d = static_cast<int>(basis.cols());
    g.columns.middleCols(at, d) = basis;
    g.contact_spans.emplace_back(at, at + d);
    at += d;
  }
  return g;
}

inline WrenchSet build_wrench_set(const GraspRecord& record,
                                  const ConeDiscretization& disc) {
  record.validate();
  WrenchSet set;
  set.origin = record.torque_origin;
  set.per_contact.reserve(record.contacts.size());
  int total = 0;
  for (const Contact& c : record.contacts) {
    set.per_contact.push_back(elementary_wrenches(c, record.torque_origin, disc));
    total += static_cast<int>(set.per_contact.back().size());
  }
  set.flat.resize(6, total);
  int at = 0;
  for (const auto& list : set.per_contact) {
    for (const Vec6& w : list) set.flat.col(at++) = w;
  }
  return set;
}

/// Fingertip frame velocities J * qdot, partitioned into one twist per
/// contact. Each 6-row contact block of the Jacobian is [linear; angular].
inline std::vector<Twist> fingertip_velocities(const GraspRecord& record,
                                               const Eigen::VectorXd& joint_rates) {
  record.validate();
  if (!record.hand_jacobian) {
    throw MissingJacobian("grasp record has no hand Jacobian");
  }
  const Eigen::MatrixXd& jac = *record.hand_jacobian;
  if (joint_rates.size() != jac.cols()) {
    throw DimensionMismatch("joint rate vector length " +
                            std::to_string(joint_rates.size()) +
                            " does not match Jacobian columns " +
                            std::to_string(jac.cols()));
  }
  const Eigen::VectorXd stacked = jac * joint_rates;
  std::vector<Twist> twists(record.contacts.size());
  for (std::size_t i = 0; i < record.contacts.size(); ++i) {
    twists[i].linear = stacked.segment<3>(static_cast<Eigen::Index>(6 * i));
    twists[i].angular = stacked.segment<3>(static_cast<Eigen::Index>(6 * i + 3));
  }
  return twists;
}

}  // namespace graspkit
