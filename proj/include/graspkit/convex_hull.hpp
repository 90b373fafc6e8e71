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
#include <map>
#include <optional>
#include <vector>

#include "graspkit/error.hpp"
#include "graspkit/lp.hpp"

namespace graspkit {

/// A finite point set in R^dim (dim 2..6). Hosts elementary-wrench columns
/// as points in R^6 for the closure and quality computations.
struct PointSet {
  int dim = 3;
  std::vector<Eigen::VectorXd> points;

  static PointSet from_matrix(const Eigen::MatrixXd& m) {
    PointSet ps;
    ps.dim = static_cast<int>(m.rows());
    ps.points.reserve(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) ps.points.push_back(m.col(j));
    return ps;
  }

  Eigen::MatrixXd as_matrix() const {
    Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = points[j];
    return m;
  }

  void validate() const {
    if (dim < 2 || dim > 6) {
      throw DimensionMismatch("PointSet dimension must be in 2..6, got " + std::to_string(dim));
    }
    if (points.empty()) throw DimensionMismatch("PointSet must be nonempty");
    for (const auto& p : points) {
      if (p.size() != dim) throw DimensionMismatch("PointSet contains a point of wrong dimension");
    }
  }

  double scale() const {
    double s = 0.0;
    for (const auto& p : points) s = std::max(s, p.lpNorm<Eigen::Infinity>());
    return s;
  }
};

/// A supporting hyperplane of the hull: outward unit normal and offset such
/// that every hull point x satisfies normal . x <= offset. With the origin
/// strictly inside, all offsets are positive and the smallest one is the
/// distance from the origin to the hull boundary.
struct Facet {
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::vector<int> vertex_ids;
};

struct HullResult {
  bool full_dimensional = false;
  int affine_rank = 0;
  std::vector<Facet> facets;           // populated only when full_dimensional
  std::vector<int> vertex_ids;         // indices into the deduplicated input
  std::vector<Eigen::VectorXd> points; // deduplicated input points

  double min_offset() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Facet& f : facets) m = std::min(m, f.offset);
    return m;
  }
};

namespace detail {

/// Deduplicate within `eps` (L-inf). Sort-and-sweep on the first coordinate;
/// order of first occurrence is preserved so downstream processing stays
/// deterministic for a given input order.
inline std::vector<Eigen::VectorXd> dedupe_points(const std::vector<Eigen::VectorXd>& pts,
                                                  double eps) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return pts[a][0] < pts[b][0]; });

  std::vector<char> dup(n, 0);
  for (int ii = 0; ii < n; ++ii) {
    const int i = order[ii];
    if (dup[i]) continue;
    for (int jj = ii + 1; jj < n; ++jj) {
      const int j = order[jj];
      if (pts[j][0] - pts[i][0] > eps) break;
      if (!dup[j] && (pts[j] - pts[i]).lpNorm<Eigen::Infinity>() <= eps) {
        // Keep the earlier point in input order.
        if (j > i) dup[j] = 1; else dup[i] = 1;
      }
    }
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!dup[i]) out.push_back(pts[i]);
  }
  return out;
}

/// Greedy affinely-independent subset: starting from the first point, keep
/// picking the point farthest from the affine hull of the picks so far until
/// the distance drops below eps. Returns the picked indices; rank is
/// picks - 1. Deterministic for a given point order.
inline std::vector<int> greedy_affine_basis(const std::vector<Eigen::VectorXd>& pts,
                                            int dim, double eps) {
  std::vector<int> picks;
  if (pts.empty()) return picks;
  picks.push_back(0);
  Eigen::MatrixXd basis(dim, 0);  // orthonormal directions of the affine hull
  while (static_cast<int>(picks.size()) <= dim) {
    int best = -1;
    double best_dist = eps;
    Eigen::VectorXd best_res;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      Eigen::VectorXd r = pts[i] - pts[picks[0]];
      if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
      const double d = r.norm();
      if (d > best_dist) {
        best_dist = d;
        best = i;
        best_res = r;
      }
    }
    if (best < 0) break;
    picks.push_back(best);
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = best_res / best_dist;
  }
  return picks;
}

/// Outward-oriented hyperplane through the given vertices. `inside` is any
/// point strictly interior to the hull.
inline void fit_facet_plane(const std::vector<Eigen::VectorXd>& pts,
                            const std::vector<int>& verts,
                            const Eigen::VectorXd& inside,
                            Eigen::VectorXd& normal, double& offset) {
  const int d = static_cast<int>(pts[0].size());
  Eigen::MatrixXd edges(d - 1, d);
  for (int i = 1; i < d; ++i) {
    edges.row(i - 1) = (pts[verts[i]] - pts[verts[0]]).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeFullV);
  normal = svd.matrixV().col(d - 1);
  double off = 0.0;
  for (int i = 0; i < d; ++i) off += normal.dot(pts[verts[i]]);
  off /= d;
  if (normal.dot(inside) > off) {
    normal = -normal;
    off = -off;
  }
  offset = off;
}

struct BuildFacet {
  std::vector<int> vertices;   // d vertex ids
  std::vector<int> neighbors;  // d adjacent facet ids
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::vector<int> outside;    // conflict list
  int farthest = -1;
  double farthest_dist = 0.0;
  bool alive = true;
};

}  // namespace detail

/// Incremental convex hull (quickhull with conflict lists) in dimension 2..6.
///
/// Degeneracy policy: points within `coplanar_eps` of a facet hyperplane are
/// treated as on the facet and never become apexes, so highly symmetric
/// inputs (wrench sets of symmetric grasps) are handled without perturbation.
/// If the input's affine hull is lower-dimensional the result reports the
/// rank and carries no facets.
inline HullResult convex_hull(const PointSet& ps, double coplanar_eps = 1e-10) {
  ps.validate();
  const int d = ps.dim;
  const double scale = std::max(1.0, ps.scale());
  const double eps_vis = coplanar_eps * scale;
  const double eps_rank = 1e-9 * scale;  // matches the strict-containment rank test

  HullResult result;
  result.points = detail::dedupe_points(ps.points, 1e-12 * scale);
  const std::vector<Eigen::VectorXd>& pts = result.points;
  const int n = static_cast<int>(pts.size());

  const std::vector<int> seed = detail::greedy_affine_basis(pts, d, eps_rank);
  result.affine_rank = static_cast<int>(seed.size()) - 1;
  result.full_dimensional = result.affine_rank == d;
  if (!result.full_dimensional) return result;

  Eigen::VectorXd inside = Eigen::VectorXd::Zero(d);
  for (int id : seed) inside += pts[id];
  inside /= static_cast<double>(seed.size());

  // Initial simplex: facet f_i omits seed vertex i; every pair of facets is
  // adjacent.
  std::vector<detail::BuildFacet> facets;
  facets.reserve(256);
  for (int omit = 0; omit <= d; ++omit) {
    detail::BuildFacet f;
    for (int i = 0; i <= d; ++i) {
      if (i != omit) f.vertices.push_back(seed[i]);
    }
    for (int i = 0; i <= d; ++i) {
      if (i != omit) f.neighbors.push_back(i);
    }
    detail::fit_facet_plane(pts, f.vertices, inside, f.normal, f.offset);
    facets.push_back(std::move(f));
  }

  // Assign every point to the first facet it lies outside of.
  std::vector<char> is_vertex(n, 0);
  for (int id : seed) is_vertex[id] = 1;
  std::vector<int> pending;  // facets that may still have outside points
  auto assign_point = [&](int pid, const std::vector<int>& candidates) {
    for (int fid : candidates) {
      detail::BuildFacet& f = facets[fid];
      if (!f.alive) continue;
      const double dist = f.normal.dot(pts[pid]) - f.offset;
      if (dist > eps_vis) {
        f.outside.push_back(pid);
        if (dist > f.farthest_dist) {
          f.farthest_dist = dist;
          f.farthest = pid;
        }
        return;
      }
    }
  };
  {
    std::vector<int> init_ids(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i) init_ids[i] = static_cast<int>(i);
    for (int p = 0; p < n; ++p) {
      if (!is_vertex[p]) assign_point(p, init_ids);
    }
    for (int fid : init_ids) {
      if (!facets[fid].outside.empty()) pending.push_back(fid);
    }
  }

  std::vector<int> visible, horizon_facets, stack_buf;
  std::map<std::vector<int>, int> ridge_to_new;

  while (!pending.empty()) {
    const int fid = pending.back();
    pending.pop_back();
    if (!facets[fid].alive || facets[fid].outside.empty()) continue;

    const int apex = facets[fid].farthest;

    // Visible region: BFS over the adjacency graph.
    visible.clear();
    stack_buf.clear();
    stack_buf.push_back(fid);
    std::vector<char> seen(facets.size(), 0);
    seen[fid] = 1;
    while (!stack_buf.empty()) {
      const int g = stack_buf.back();
      stack_buf.pop_back();
      visible.push_back(g);
      for (int h : facets[g].neighbors) {
        if (seen[h] || !facets[h].alive) continue;
        seen[h] = 1;
        if (facets[h].normal.dot(pts[apex]) - facets[h].offset > eps_vis) {
          stack_buf.push_back(h);
        }
      }
    }
    std::vector<char> is_visible(facets.size(), 0);
    for (int g : visible) is_visible[g] = 1;

    // Horizon ridges: (visible g, non-visible h) adjacent pairs. The ridge is
    // the d-1 vertices the two facets share.
    struct Horizon {
      std::vector<int> ridge;
      int outer;
      int inner;
    };
    std::vector<Horizon> horizon;
    for (int g : visible) {
      for (int h : facets[g].neighbors) {
        if (!facets[h].alive || is_visible[h]) continue;
        Horizon hz;
        hz.outer = h;
        hz.inner = g;
        for (int v : facets[g].vertices) {
          if (std::find(facets[h].vertices.begin(), facets[h].vertices.end(), v) !=
              facets[h].vertices.end()) {
            hz.ridge.push_back(v);
          }
        }
        if (static_cast<int>(hz.ridge.size()) != d - 1) {
          throw NumericalFailure("convex_hull: inconsistent ridge");
        }
        horizon.push_back(std::move(hz));
      }
    }

    // Cone of new facets from the horizon to the apex.
    ridge_to_new.clear();
    std::vector<int> new_ids;
    for (const Horizon& hz : horizon) {
      detail::BuildFacet f;
      f.vertices = hz.ridge;
      f.vertices.push_back(apex);
      f.neighbors.assign(f.vertices.size(), -1);
      detail::fit_facet_plane(pts, f.vertices, inside, f.normal, f.offset);
      const int nid = static_cast<int>(facets.size());

      // Link across the horizon ridge.
      f.neighbors[0] = hz.outer;
      for (int& nb : facets[hz.outer].neighbors) {
        if (nb == hz.inner) {
          nb = nid;
          break;
        }
      }

      // Link new facets to each other through the ridges containing the apex:
      // key = sorted ridge minus one horizon vertex, plus the apex.
      facets.push_back(std::move(f));
      new_ids.push_back(nid);
      for (std::size_t skip = 0; skip < hz.ridge.size(); ++skip) {
        std::vector<int> key;
        key.reserve(d - 1);
        for (std::size_t i = 0; i < hz.ridge.size(); ++i) {
          if (i != skip) key.push_back(hz.ridge[i]);
        }
        key.push_back(apex);
        std::sort(key.begin(), key.end());
        auto [it, inserted] = ridge_to_new.try_emplace(key, nid);
        if (!inserted) {
          const int other = it->second;
          facets[nid].neighbors[1 + skip] = other;
          // Fill the matching open slot of `other` (slot 1 + oskip holds the
          // apex-ridge omitting its oskip-th horizon vertex).
          detail::BuildFacet& of = facets[other];
          for (std::size_t oskip = 0; oskip + 1 < of.vertices.size(); ++oskip) {
            if (of.neighbors[1 + oskip] != -1) continue;
            std::vector<int> okey;
            for (std::size_t i = 0; i + 1 < of.vertices.size(); ++i) {
              if (i != oskip) okey.push_back(of.vertices[i]);
            }
            okey.push_back(apex);
            std::sort(okey.begin(), okey.end());
            if (okey == key) {
              of.neighbors[1 + oskip] = nid;
              break;
            }
          }
        }
      }
    }

    is_vertex[apex] = 1;

    // Redistribute the conflict lists of the dead facets.
    for (int g : visible) facets[g].alive = false;
    for (int g : visible) {
      for (int pid : facets[g].outside) {
        if (pid != apex && !is_vertex[pid]) assign_point(pid, new_ids);
      }
      facets[g].outside.clear();
      facets[g].outside.shrink_to_fit();
    }
    for (int nid : new_ids) {
      if (!facets[nid].outside.empty()) pending.push_back(nid);
    }
  }

  for (const detail::BuildFacet& f : facets) {
    if (!f.alive) continue;
    Facet out;
    out.normal = f.normal;
    out.offset = f.offset;
    out.vertex_ids = f.vertices;
    result.facets.push_back(std::move(out));
  }
  std::vector<char> used(n, 0);
  for (const Facet& f : result.facets) {
    for (int v : f.vertex_ids) used[v] = 1;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) result.vertex_ids.push_back(i);
  }
  return result;
}

/// Convex-combination membership of the origin via LP.
///
/// Non-strict: feasibility of sum a_j x_j = 0, sum a_j = 1, a >= 0. Strict:
/// the affine hull must be full-dimensional and the all-positive-weights
/// margin LP must clear 1e-9 (an interior point is exactly one expressible
/// with strictly positive weights on a full-dimensional point set).
inline bool contains_origin(const PointSet& ps, bool strict) {
  ps.validate();
  const double scale = ps.scale();
  if (scale <= 0.0) {
    throw DegenerateInput("contains_origin: all points are zero");
  }
  if (strict) {
    const std::vector<int> basis =
        detail::greedy_affine_basis(ps.points, ps.dim, 1e-9 * std::max(1.0, scale));
    if (static_cast<int>(basis.size()) - 1 < ps.dim) return false;
  }
  const std::optional<double> margin = origin_hull_margin(ps.as_matrix());
  if (!margin) return false;
  return strict ? *margin > 1e-9 : true;
}

/// Distance from the origin to the hull boundary: the minimum facet offset.
/// Requires the origin strictly inside a full-dimensional hull.
inline double boundary_distance(const PointSet& ps) {
  const HullResult hull = convex_hull(ps);
  if (!hull.full_dimensional) {
    throw OriginOutside("boundary_distance: hull is not full-dimensional (affine rank " +
                        std::to_string(hull.affine_rank) + ")");
  }
  const double dist = hull.min_offset();
  if (dist <= 1e-9 * std::max(1.0, ps.scale())) {
    throw OriginOutside("boundary_distance: origin is not strictly inside the hull");
  }
  return dist;
}

}  // namespace graspkit
