#pragma once
// Facet enumeration of convex hulls of point clouds in dimension <= 6 by
// incremental insertion (beneath-beyond): start from a full-dimensional
// simplex, insert the remaining points farthest-first, replace the facets
// visible from each new point by the cone over its horizon ridges.
//
// Clouds whose affine hull is lower-dimensional are rejected with the affine
// dimension attached; callers that can work in the affine hull (radius-zero
// membership tests) project and retry.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"

namespace thicksum {

inline constexpr int kMaxHullDim = 6;

struct Facet {
  Point normal;              // unit outward normal
  double offset = 0.0;       // <normal, x> <= offset for hull points
  std::vector<int> vertices; // indices into the cloud, sorted
};

struct HRepresentation {
  int dim = 0;
  std::vector<Facet> facets;
};

struct AffineBasis {
  int rank = 0;                    // dimension of the affine hull
  std::vector<int> independent;    // rank+1 affinely independent point indices
  std::vector<Point> orthonormal;  // rank orthonormal spanning vectors
};

// Rank of the affine hull via Gram-Schmidt against the first point, keeping
// the indices of the points that contributed new directions.
inline AffineBasis affine_basis(const PointCloud& cloud, double tol) {
  if (cloud.points.empty()) throw ValidationError("affine basis of empty cloud");
  AffineBasis basis;
  basis.independent.push_back(0);
  const Point& p0 = cloud.points[0];
  for (std::size_t i = 1; i < cloud.points.size(); ++i) {
    if (basis.rank == cloud.dim) break;
    Point v = sub(cloud.points[i], p0);
    for (const auto& q : basis.orthonormal) axpy(v, -dot(v, q), q);
    const double len = norm(v);
    if (len > tol) {
      basis.orthonormal.push_back(scale(v, 1.0 / len));
      basis.independent.push_back(static_cast<int>(i));
      ++basis.rank;
    }
  }
  return basis;
}

inline int affine_rank(const PointCloud& cloud, const Tolerance& tol = {}) {
  return affine_basis(cloud, tol.abs).rank;
}

// Coordinates of the cloud in the orthonormal affine basis. The returned
// residual is the largest distance from any point to the affine subspace.
inline std::pair<PointCloud, double> project_to_affine(const PointCloud& cloud,
                                                       const AffineBasis& basis) {
  PointCloud out;
  out.dim = std::max(basis.rank, 1);
  double worst = 0.0;
  const Point& p0 = cloud.points[basis.independent[0]];
  for (const auto& p : cloud.points) {
    Point v = sub(p, p0);
    Point coords(out.dim, 0.0);
    for (int j = 0; j < basis.rank; ++j) {
      coords[j] = dot(v, basis.orthonormal[j]);
      axpy(v, -coords[j], basis.orthonormal[j]);
    }
    worst = std::max(worst, norm(v));
    out.points.push_back(std::move(coords));
  }
  return {std::move(out), worst};
}

namespace hull_detail {

// Unit normal of the hyperplane through the given vertices: a null vector of
// the (d-1) x d system of in-plane directions, found by Gaussian elimination
// with partial pivoting; the first pivot-free column is set to one.
inline Point hyperplane_normal(const std::vector<Point>& pts,
                               const std::vector<int>& verts) {
  const int d = static_cast<int>(pts[verts[0]].size());
  const int rows = d - 1;
  std::vector<Point> a(rows, Point(d, 0.0));
  for (int i = 0; i < rows; ++i) a[i] = sub(pts[verts[i + 1]], pts[verts[0]]);

  std::vector<int> pivot_col(rows, -1);
  std::vector<char> used(d, 0);
  int r = 0;
  for (int col = 0; col < d && r < rows; ++col) {
    int best = -1;
    double best_abs = 1e-13;
    for (int i = r; i < rows; ++i) {
      if (std::abs(a[i][col]) > best_abs) {
        best_abs = std::abs(a[i][col]);
        best = i;
      }
    }
    if (best < 0) continue;
    std::swap(a[r], a[best]);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = a[i][col] / a[r][col];
      if (f != 0.0) {
        for (int j = 0; j < d; ++j) a[i][j] -= f * a[r][j];
        a[i][col] = 0.0;
      }
    }
    pivot_col[r] = col;
    used[col] = 1;
    ++r;
  }
  if (r < rows) return {};  // vertices affinely dependent

  int free_col = -1;
  for (int j = 0; j < d; ++j) {
    if (!used[j]) {
      free_col = j;
      break;
    }
  }
  Point n(d, 0.0);
  n[free_col] = 1.0;
  for (int i = 0; i < rows; ++i)
    n[pivot_col[i]] = -a[i][free_col] / a[i][pivot_col[i]];
  const double len = norm(n);
  if (!(len > 0.0)) return {};
  return scale(n, 1.0 / len);
}

struct WorkFacet {
  std::vector<int> verts;  // sorted
  Point normal;
  double offset = 0.0;
};

inline bool make_facet(const std::vector<Point>& pts, std::vector<int> verts,
                       const Point& interior, WorkFacet& out) {
  std::sort(verts.begin(), verts.end());
  Point n = hyperplane_normal(pts, verts);
  if (n.empty()) return false;
  double off = dot(n, pts[verts[0]]);
  const double side = dot(n, interior) - off;
  if (std::abs(side) < 1e-13) return false;  // interior point on the plane
  if (side > 0.0) {
    n = scale(n, -1.0);
    off = -off;
  }
  out.verts = std::move(verts);
  out.normal = std::move(n);
  out.offset = off;
  return true;
}

}  // namespace hull_detail

// Facet enumeration. Throws DegenerateInput (with affine dimension) when the
// cloud does not span the ambient space, ValidationError above kMaxHullDim.
inline HRepresentation convex_hull(const PointCloud& cloud,
                                   const Tolerance& tol = {}) {
  using hull_detail::WorkFacet;
  const int d = cloud.dim;
  if (d > kMaxHullDim)
    throw ValidationError("convex_hull: dimension " + std::to_string(d) +
                          " exceeds supported maximum " +
                          std::to_string(kMaxHullDim));
  if (cloud.points.empty()) throw ValidationError("convex_hull: empty cloud");

  const auto& pts = cloud.points;
  HRepresentation rep;
  rep.dim = d;

  if (d == 1) {
    if (pts.size() < 2) throw DegenerateInput("convex_hull: single point", 0);
    double lo = pts[0][0], hi = pts[0][0];
    int ilo = 0, ihi = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i][0] < lo) { lo = pts[i][0]; ilo = static_cast<int>(i); }
      if (pts[i][0] > hi) { hi = pts[i][0]; ihi = static_cast<int>(i); }
    }
    if (hi - lo <= tol.abs)
      throw DegenerateInput("convex_hull: cloud has zero extent", 0);
    rep.facets.push_back({Point{-1.0}, -lo, {ilo}});
    rep.facets.push_back({Point{1.0}, hi, {ihi}});
    return rep;
  }

  const AffineBasis basis = affine_basis(cloud, tol.abs);
  if (basis.rank < d)
    throw DegenerateInput("convex_hull: affine hull has dimension " +
                              std::to_string(basis.rank) + " < " +
                              std::to_string(d),
                          basis.rank);

  // Interior reference: centroid of the initial simplex. The hull only grows,
  // so it stays interior for the whole run.
  Point interior(d, 0.0);
  for (int idx : basis.independent) axpy(interior, 1.0, pts[idx]);
  interior = scale(interior, 1.0 / static_cast<double>(basis.independent.size()));

  std::vector<WorkFacet> facets;
  for (std::size_t skip = 0; skip < basis.independent.size(); ++skip) {
    std::vector<int> verts;
    for (std::size_t i = 0; i < basis.independent.size(); ++i)
      if (i != skip) verts.push_back(basis.independent[i]);
    WorkFacet f;
    if (!hull_detail::make_facet(pts, std::move(verts), interior, f))
      throw SolverFailure("convex_hull: degenerate initial simplex facet");
    facets.push_back(std::move(f));
  }

  std::vector<char> in_simplex(pts.size(), 0);
  for (int idx : basis.independent) in_simplex[idx] = 1;
  std::vector<int> order;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!in_simplex[i]) order.push_back(static_cast<int>(i));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double da = dist2(pts[a], interior), db = dist2(pts[b], interior);
    if (da != db) return da > db;
    return a < b;
  });

  auto insert_point = [&](int pi) -> bool {
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (dot(facets[f].normal, pts[pi]) - facets[f].offset > tol.abs)
        visible.push_back(f);
    if (visible.empty()) return false;

    // Horizon ridges appear in exactly one visible facet.
    std::map<std::vector<int>, int> ridge_count;
    for (std::size_t f : visible) {
      const auto& verts = facets[f].verts;
      for (std::size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<int> ridge;
        for (std::size_t i = 0; i < verts.size(); ++i)
          if (i != skip) ridge.push_back(verts[i]);
        ridge_count[ridge] += 1;
      }
    }
    std::vector<WorkFacet> fresh;
    for (const auto& [ridge, cnt] : ridge_count) {
      if (cnt != 1) continue;
      std::vector<int> verts = ridge;
      verts.push_back(pi);
      WorkFacet f;
      if (hull_detail::make_facet(pts, std::move(verts), interior, f))
        fresh.push_back(std::move(f));
    }
    std::vector<char> is_visible(facets.size(), 0);
    for (std::size_t f : visible) is_visible[f] = 1;
    std::vector<WorkFacet> next;
    next.reserve(facets.size() - visible.size() + fresh.size());
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (!is_visible[f]) next.push_back(std::move(facets[f]));
    for (auto& f : fresh) next.push_back(std::move(f));
    facets = std::move(next);
    return true;
  };

  for (int pi : order) insert_point(pi);

  // Repair sweep: numeric drift can leave a point slightly exposed; reinsert
  // until everything is inside at tolerance.
  for (int pass = 0; pass < 4; ++pass) {
    bool dirty = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (const auto& f : facets) {
        if (dot(f.normal, pts[i]) - f.offset > tol.abs) {
          dirty |= insert_point(static_cast<int>(i));
          break;
        }
      }
    }
    if (!dirty) break;
    if (pass == 3) throw SolverFailure("convex_hull: repair did not converge");
  }

  for (auto& f : facets) rep.facets.push_back({f.normal, f.offset, f.verts});
  std::sort(rep.facets.begin(), rep.facets.end(),
            [](const Facet& a, const Facet& b) {
              if (a.normal != b.normal) return a.normal < b.normal;
              return a.offset < b.offset;
            });
  return rep;
}

struct BallInHullReport {
  bool inside = false;
  double margin = 0.0;  // min facet slack minus radius; decision margin >= -tol
};

// Is B(center, radius) contained in conv(hull points), by facet slacks?
inline BallInHullReport ball_in_hull(const HRepresentation& rep, const Ball& b,
                                     const Tolerance& tol = {}) {
  check_point_dim(b.center, rep.dim, "ball center");
  if (b.radius < 0) throw ValidationError("ball radius must be >= 0");
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& f : rep.facets)
    slack = std::min(slack, f.offset - dot(f.normal, b.center));
  BallInHullReport out;
  out.margin = slack - b.radius;
  out.inside = out.margin >= -tol.abs;
  return out;
}

inline BallInHullReport ball_in_hull(const PointCloud& cloud, const Ball& b,
                                     const Tolerance& tol = {}) {
  check_point_dim(b.center, cloud.dim, "ball center");
  try {
    return ball_in_hull(convex_hull(cloud, tol), b, tol);
  } catch (const DegenerateInput&) {
    // Degenerate hull: only a radius-zero query can succeed, decided inside
    // the affine hull of the cloud.
    BallInHullReport out;
    if (b.radius > tol.abs) {
      out.inside = false;
      out.margin = -std::numeric_limits<double>::infinity();
      return out;
    }
    const AffineBasis basis = affine_basis(cloud, tol.abs);
    const Point& p0 = cloud.points[basis.independent[0]];
    Point v = sub(b.center, p0);
    Point coords(std::max(basis.rank, 1), 0.0);
    for (int j = 0; j < basis.rank; ++j) {
      coords[j] = dot(v, basis.orthonormal[j]);
      axpy(v, -coords[j], basis.orthonormal[j]);
    }
    const double residual = norm(v);
    if (residual > tol.abs) {
      out.inside = false;
      out.margin = -residual;
      return out;
    }
    if (basis.rank == 0) {
      out.margin = -dist(b.center, p0);
      out.inside = out.margin >= -tol.abs;
      return out;
    }
    auto [projected, proj_residual] = project_to_affine(cloud, basis);
    (void)proj_residual;
    if (projected.dim == 1) {
      double lo = projected.points[0][0], hi = lo;
      for (const auto& p : projected.points) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      out.margin = std::min(coords[0] - lo, hi - coords[0]);
      out.inside = out.margin >= -tol.abs;
      return out;
    }
    return ball_in_hull(projected, Ball{coords, 0.0}, tol);
  }
}

}  // namespace thicksum
