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

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "graspkit/error.hpp"
#include "graspkit/rigid.hpp"
#include "graspkit/rng.hpp"

namespace graspkit {

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

struct Ellipsoid {
  Vec3 center = Vec3::Zero();
  Vec3 semi_axes = Vec3::Ones();
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  double signed_volume() const {
    double v = 0.0;
    for (const auto& t : triangles) {
      v += vertices[t[0]].dot(vertices[t[1]].cross(vertices[t[2]]));
    }
    return v / 6.0;
  }

  double triangle_area(int i) const {
    const auto& t = triangles[i];
    return 0.5 * (vertices[t[1]] - vertices[t[0]])
                     .cross(vertices[t[2]] - vertices[t[0]])
                     .norm();
  }

  void validate() const {
    if (vertices.empty() || triangles.empty()) {
      throw SchemaError("mesh: needs vertices and triangles");
    }
    const int n = static_cast<int>(vertices.size());
    for (const auto& t : triangles) {
      for (int idx : t) {
        if (idx < 0 || idx >= n) {
          throw SchemaError("mesh: triangle index " + std::to_string(idx) +
                            " out of range");
        }
      }
    }
    if (signed_volume() <= 0.0) {
      throw SchemaError("mesh: triangles must be consistently outward-oriented "
                        "(signed volume > 0)");
    }
  }
};

using SurfaceModel = std::variant<Sphere, Ellipsoid, TriangleMesh>;

inline void validate_surface(const SurfaceModel& surface) {
  if (const auto* s = std::get_if<Sphere>(&surface)) {
    if (!(s->radius > 0.0)) throw SchemaError("sphere: radius must be positive");
  } else if (const auto* e = std::get_if<Ellipsoid>(&surface)) {
    if (!(e->semi_axes.minCoeff() > 0.0)) {
      throw SchemaError("ellipsoid: semi-axes must be positive");
    }
  } else {
    std::get<TriangleMesh>(surface).validate();
  }
}

/// A point constrained to an object surface, with a 2-parameter chart.
///
/// Quadrics (sphere/ellipsoid): (u, v) = (theta, phi), polar angle theta
/// measured from the chart's pole axis; chart 0 has poles on +-z, chart 1 on
/// +-x (used to step away from the theta singularity). Meshes: chart is the
/// triangle index and (u, v) the barycentric coordinates of vertices 1 and 2.
/// `position` and `inward_normal` are derived. Normals point into the object.
struct SurfacePoint {
  int chart = 0;
  double u = 0.0;
  double v = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 inward_normal = -Vec3::UnitZ();
};

namespace surface_detail {

inline Vec3 quadric_embed(const Vec3& semi_axes, int chart, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  if (chart == 0) {
    return {semi_axes[0] * st * cp, semi_axes[1] * st * sp, semi_axes[2] * ct};
  }
  // chart 1: poles on the x axis
  return {semi_axes[0] * ct, semi_axes[1] * st * cp, semi_axes[2] * st * sp};
}

inline void quadric_angles(const Vec3& unit, int chart, double& theta, double& phi) {
  if (chart == 0) {
    theta = std::acos(std::clamp(unit[2], -1.0, 1.0));
    phi = std::atan2(unit[1], unit[0]);
  } else {
    theta = std::acos(std::clamp(unit[0], -1.0, 1.0));
    phi = std::atan2(unit[2], unit[1]);
  }
}

/// Closest point on triangle abc to p, with barycentric output (weights of
/// b and c). Standard region-walk construction.
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                      const Vec3& c, double& u, double& v) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) {
    u = v = 0.0;
    return a;
  }
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) {
    u = 1.0;
    v = 0.0;
    return b;
  }
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    u = d1 / (d1 - d3);
    v = 0.0;
    return a + u * ab;
  }
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) {
    u = 0.0;
    v = 1.0;
    return c;
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    u = 0.0;
    v = d2 / (d2 - d6);
    return a + v * ac;
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    u = 1.0 - w;
    v = w;
    return b + w * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  u = vb * denom;
  v = vc * denom;
  return a + ab * u + ac * v;
}

}  // namespace surface_detail

/// Evaluate a chart point: fills position and inward normal.
inline SurfacePoint surface_point(const SurfaceModel& surface, int chart, double u,
                                  double v) {
  SurfacePoint sp;
  sp.chart = chart;
  sp.u = u;
  sp.v = v;
  if (const auto* s = std::get_if<Sphere>(&surface)) {
    const Vec3 radial =
        surface_detail::quadric_embed(Vec3::Ones(), chart, u, v);
    sp.position = s->center + s->radius * radial;
    sp.inward_normal = -radial;
  } else if (const auto* e = std::get_if<Ellipsoid>(&surface)) {
    const Vec3 offset = surface_detail::quadric_embed(e->semi_axes, chart, u, v);
    sp.position = e->center + offset;
    const Vec3 grad(offset[0] / (e->semi_axes[0] * e->semi_axes[0]),
                    offset[1] / (e->semi_axes[1] * e->semi_axes[1]),
                    offset[2] / (e->semi_axes[2] * e->semi_axes[2]));
    sp.inward_normal = -grad.normalized();
  } else {
    const auto& mesh = std::get<TriangleMesh>(surface);
    const int tri = chart;
    if (tri < 0 || tri >= static_cast<int>(mesh.triangles.size())) {
      throw DimensionMismatch("surface_point: triangle index out of range");
    }
    const auto& t = mesh.triangles[tri];
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    sp.position = a + u * (b - a) + v * (c - a);
    const Vec3 outward = (b - a).cross(c - a).normalized();
    sp.inward_normal = -outward;
  }
  return sp;
}

/// Nearest point on the mesh surface to an arbitrary 3-D point.
inline SurfacePoint project_to_mesh(const TriangleMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  int best_tri = 0;
  double best_u = 0.0, best_v = 0.0;
  for (int i = 0; i < static_cast<int>(mesh.triangles.size()); ++i) {
    const auto& t = mesh.triangles[i];
    double u, v;
    const Vec3 q = surface_detail::closest_point_on_triangle(
        p, mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], u, v);
    const double d = (q - p).squaredNorm();
    if (d < best) {
      best = d;
      best_tri = i;
      best_u = u;
      best_v = v;
    }
  }
  SurfacePoint sp = surface_point(SurfaceModel{mesh}, best_tri, best_u, best_v);
  return sp;
}

/// Step a surface point by (du, dv) in its chart. Quadric points switch to
/// the rotated chart when theta comes within 1e-3 of a pole; mesh points are
/// re-projected to the nearest surface point (facet hopping allowed).
inline SurfacePoint step_on_surface(const SurfaceModel& surface, const SurfacePoint& at,
                                    double du, double dv) {
  if (std::holds_alternative<TriangleMesh>(surface)) {
    const auto& mesh = std::get<TriangleMesh>(surface);
    const auto& t = mesh.triangles[at.chart];
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const Vec3 target = a + (at.u + du) * (b - a) + (at.v + dv) * (c - a);
    return project_to_mesh(mesh, target);
  }

  double theta = at.u + du;
  double phi = at.v + dv;
  int chart = at.chart;
  // Re-chart near the poles so the descent never sees the phi singularity.
  if (theta < 1e-3 || theta > M_PI - 1e-3) {
    const Vec3 semi = std::holds_alternative<Sphere>(surface)
                          ? Vec3::Ones()
                          : std::get<Ellipsoid>(surface).semi_axes;
    const Vec3 offset = surface_detail::quadric_embed(semi, chart, theta, phi);
    const Vec3 unit(offset[0] / semi[0], offset[1] / semi[1], offset[2] / semi[2]);
    chart = 1 - chart;
    surface_detail::quadric_angles(unit, chart, theta, phi);
  }
  return surface_point(surface, chart, theta, phi);
}

/// Uniform-ish random surface point: spheres and ellipsoids sample a uniform
/// direction on S^2; meshes sample a triangle by area and then uniformly in
/// barycentric coordinates.
inline SurfacePoint sample_surface(const SurfaceModel& surface, Rng& rng) {
  if (std::holds_alternative<TriangleMesh>(surface)) {
    const auto& mesh = std::get<TriangleMesh>(surface);
    double total = 0.0;
    std::vector<double> cumulative(mesh.triangles.size());
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
      total += mesh.triangle_area(static_cast<int>(i));
      cumulative[i] = total;
    }
    const double pick = rng.uniform() * total;
    int tri = 0;
    while (tri + 1 < static_cast<int>(cumulative.size()) && cumulative[tri] < pick) {
      ++tri;
    }
    const double r1 = rng.uniform(), r2 = rng.uniform();
    const double s = std::sqrt(r1);
    return surface_point(surface, tri, 1.0 - s, r2 * s);
  }
  const Eigen::VectorXd dir = rng.unit_vector(3);
  const Vec3 unit(dir[0], dir[1], dir[2]);
  double theta, phi;
  int chart = 0;
  surface_detail::quadric_angles(unit, chart, theta, phi);
  if (theta < 1e-3 || theta > M_PI - 1e-3) {
    chart = 1;
    surface_detail::quadric_angles(unit, chart, theta, phi);
  }
  return surface_point(surface, chart, theta, phi);
}

/// Approximate distance from a point to the surface, for validation.
inline double surface_distance(const SurfaceModel& surface, const Vec3& p) {
  if (const auto* s = std::get_if<Sphere>(&surface)) {
    return std::abs((p - s->center).norm() - s->radius);
  }
  if (const auto* e = std::get_if<Ellipsoid>(&surface)) {
    const Vec3 d = p - e->center;
    const Vec3 scaled(d[0] / e->semi_axes[0], d[1] / e->semi_axes[1],
                      d[2] / e->semi_axes[2]);
    const double f = scaled.squaredNorm() - 1.0;
    const Vec3 grad(2.0 * scaled[0] / e->semi_axes[0], 2.0 * scaled[1] / e->semi_axes[1],
                    2.0 * scaled[2] / e->semi_axes[2]);
    const double g = grad.norm();
    return g > 1e-12 ? std::abs(f) / g : std::abs(f);
  }
  const auto& mesh = std::get<TriangleMesh>(surface);
  const SurfacePoint sp = project_to_mesh(mesh, p);
  return (sp.position - p).norm();
}

/// ASCII OFF reader. Accepts comment lines (#) and blank lines; faces must be
/// triangles.
inline TriangleMesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open OFF file: " + path);

  auto next_token_line = [&in](std::string& line) -> bool {
    while (std::getline(in, line)) {
      const auto pos = line.find('#');
      if (pos != std::string::npos) line = line.substr(0, pos);
      bool blank = true;
      for (char ch : line) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
          blank = false;
          break;
        }
      }
      if (!blank) return true;
    }
    return false;
  };

  std::string line;
  if (!next_token_line(line)) throw SchemaError(path + ": empty OFF file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  std::size_t nv = 0, nf = 0, ne = 0;
  if (magic == "OFF") {
    if (!(header >> nv >> nf >> ne)) {
      if (!next_token_line(line)) throw SchemaError(path + ": missing OFF counts");
      std::istringstream counts(line);
      if (!(counts >> nv >> nf >> ne)) throw SchemaError(path + ": bad OFF counts");
    }
  } else {
    std::istringstream counts(line);
    if (!(counts >> nv >> nf >> ne)) throw SchemaError(path + ": bad OFF header");
  }

  TriangleMesh mesh;
  mesh.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!next_token_line(line)) throw SchemaError(path + ": truncated vertex list");
    std::istringstream row(line);
    Vec3 v;
    if (!(row >> v[0] >> v[1] >> v[2])) {
      throw SchemaError(path + ": bad vertex " + std::to_string(i));
    }
    mesh.vertices.push_back(v);
  }
  mesh.triangles.reserve(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (!next_token_line(line)) throw SchemaError(path + ": truncated face list");
    std::istringstream row(line);
    int arity = 0;
    if (!(row >> arity) || arity != 3) {
      throw SchemaError(path + ": face " + std::to_string(i) + " is not a triangle");
    }
    std::array<int, 3> t{};
    if (!(row >> t[0] >> t[1] >> t[2])) {
      throw SchemaError(path + ": bad face " + std::to_string(i));
    }
    mesh.triangles.push_back(t);
  }
  mesh.validate();
  return mesh;
}

inline void save_off(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write OFF file: " + path);
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  out.precision(17);
  for (const Vec3& v : mesh.vertices) {
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const auto& t : mesh.triangles) {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

}  // namespace graspkit
