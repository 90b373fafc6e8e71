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
#include <Eigen/Geometry>
#include <cmath>

#include "graspkit/error.hpp"

namespace graspkit {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;

/// Rigid transform: rotation (orthonormal, det +1) plus translation, meters.
struct Transform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Transform identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  Transform compose(const Transform& other) const {
    return {rotation * other.rotation,
            rotation * other.translation + translation};
  }

  Transform inverse() const {
    const Mat3 rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

/// Rigid-body velocity: linear (m/s) and angular (rad/s) parts.
struct Twist {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  Vec6 as_vector() const {
    Vec6 v;
    v << linear, angular;
    return v;
  }
};

/// Force (N) and moment (N*m) taken about `origin` (meters).
struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
  Vec3 origin = Vec3::Zero();

  Vec6 as_vector() const {
    Vec6 v;
    v << force, moment;
    return v;
  }
};

/// Right-handed orthonormal contact frame {t1, t2, normal} with normal
/// pointing into the object (t1 x t2 = normal).
struct TangentFrame {
  Vec3 normal = Vec3::UnitZ();
  Vec3 t1 = Vec3::UnitX();
  Vec3 t2 = Vec3::UnitY();
};

/// 6-parameter pose (x, y, z, yaw, pitch, roll) to a rigid transform.
/// Rotation is the intrinsic ZYX composition Rz(yaw) * Ry(pitch) * Rx(roll).
inline Transform pose_to_transform(const Vec6& u) {
  const double cz = std::cos(u[3]), sz = std::sin(u[3]);
  const double cy = std::cos(u[4]), sy = std::sin(u[4]);
  const double cx = std::cos(u[5]), sx = std::sin(u[5]);
  Mat3 rz, ry, rx;
  rz << cz, -sz, 0, sz, cz, 0, 0, 0, 1;
  ry << cy, 0, sy, 0, 1, 0, -sy, 0, cy;
  rx << 1, 0, 0, 0, cx, -sx, 0, sx, cx;
  return {rz * ry * rx, u.head<3>()};
}

/// Inverse of pose_to_transform. Valid away from the pitch singularity
/// (|pitch| = pi/2), where yaw and roll are not separately recoverable.
inline Vec6 pose_of(const Transform& t) {
  const Mat3& r = t.rotation;
  Vec6 u;
  u.head<3>() = t.translation;
  u[4] = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  if (std::abs(r(2, 0)) < 1.0 - 1e-12) {
    u[3] = std::atan2(r(1, 0), r(0, 0));
    u[5] = std::atan2(r(2, 1), r(2, 2));
  } else {
    // Gimbal lock: fold the unrecoverable angle into yaw.
    u[3] = std::atan2(-r(0, 1), r(1, 1));
    u[5] = 0.0;
  }
  return u;
}

/// Re-express the moment of `w` about `new_origin`. The force is unchanged;
/// moment' = moment + (origin - new_origin) x force.
inline Wrench reref_wrench(const Wrench& w, const Vec3& new_origin) {
  Wrench out;
  out.force = w.force;
  out.moment = w.moment + (w.origin - new_origin).cross(w.force);
  out.origin = new_origin;
  return out;
}

/// Build a deterministic right-handed tangent frame whose third axis is the
/// normalized input. t1 is chosen by projecting the world axis least aligned
/// with the normal (smallest |n . e_i|, ties to the lower index) onto the
/// tangent plane; t2 = normal x t1.
inline TangentFrame tangent_frame(const Vec3& normal) {
  const double norm = normal.norm();
  if (norm <= 1e-12) {
    throw ZeroNormal("tangent_frame: zero-length normal");
  }
  const Vec3 n = normal / norm;
  int least = 0;
  double best = std::abs(n[0]);
  for (int i = 1; i < 3; ++i) {
    const double a = std::abs(n[i]);
    if (a < best) {
      best = a;
      least = i;
    }
  }
  const Vec3 axis = Vec3::Unit(least);
  Vec3 t1 = axis - axis.dot(n) * n;
  t1.normalize();
  const Vec3 t2 = n.cross(t1);
  return {n, t1, t2};
}

}  // namespace graspkit
