#pragma once
// Basic finite-point-set geometry: runtime-dimensioned points, balls, point
// clouds, support functions, diameters, covering checks and brute-force
// Minkowski sums. Everything downstream builds on these primitives.
//
// Comparisons are absolute: x <= y holds at tolerance t iff x <= y + t.abs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "thicksum/errors.hpp"

namespace thicksum {

using Point = std::vector<double>;

struct Tolerance {
  double abs = 1e-9;
};

inline void check_point_dim(const Point& p, int dim, const char* what) {
  if (static_cast<int>(p.size()) != dim)
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(dim) + ", got " +
                            std::to_string(p.size()));
}

inline double dot(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(norm2(a)); }

inline double dist2(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dist: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

inline Point add(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point sub(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point scale(const Point& a, double s) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

// r += s * a
inline void axpy(Point& r, double s, const Point& a) {
  if (r.size() != a.size()) throw DimensionMismatch("axpy: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
}

struct Ball {
  Point center;
  double radius = 0.0;  // >= 0
};

struct PointCloud {
  int dim = 0;
  std::vector<Point> points;  // input order, deduplicated
};

// Greedy first-seen deduplication at tolerance `tol`. Points are kept in input
// order; a point within tol of an already-kept point is dropped. The sweep is
// indexed by the first coordinate so only nearby candidates are compared.
inline std::vector<Point> dedupe_points(const std::vector<Point>& pts, double tol) {
  std::vector<Point> kept;
  kept.reserve(pts.size());
  std::multimap<double, std::size_t> by_first;  // coord0 -> index into kept
  for (const auto& p : pts) {
    bool duplicate = false;
    if (!p.empty()) {
      auto lo = by_first.lower_bound(p[0] - tol);
      auto hi = by_first.upper_bound(p[0] + tol);
      for (auto it = lo; it != hi; ++it) {
        if (dist(kept[it->second], p) <= tol) {
          duplicate = true;
          break;
        }
      }
    }
    if (!duplicate) {
      kept.push_back(p);
      if (!p.empty()) by_first.emplace(p[0], kept.size() - 1);
    }
  }
  return kept;
}

inline PointCloud make_cloud(int dim, std::vector<Point> pts,
                             const Tolerance& tol = {}) {
  if (dim < 1) throw ValidationError("cloud dimension must be positive");
  if (pts.empty()) throw ValidationError("cloud must be nonempty");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(pts[i].size()) != dim)
      throw DimensionMismatch("cloud point " + std::to_string(i) +
                              " has size " + std::to_string(pts[i].size()) +
                              ", expected " + std::to_string(dim));
  }
  PointCloud c;
  c.dim = dim;
  c.points = dedupe_points(pts, tol.abs);
  return c;
}

// h(u) = max over cloud points of <p, u>. u need not be unit.
inline double support_function(const PointCloud& cloud, const Point& u) {
  check_point_dim(u, cloud.dim, "support direction");
  if (cloud.points.empty()) throw ValidationError("support of empty cloud");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : cloud.points) best = std::max(best, dot(p, u));
  return best;
}

inline double diameter(const PointCloud& cloud) {
  if (cloud.points.empty()) throw ValidationError("diameter of empty cloud");
  double best = 0.0;
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.points.size(); ++j)
      best = std::max(best, dist2(cloud.points[i], cloud.points[j]));
  return std::sqrt(best);
}

inline double distance_to_cloud(const Point& p, const PointCloud& cloud) {
  check_point_dim(p, cloud.dim, "query point");
  if (cloud.points.empty()) throw ValidationError("distance to empty cloud");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : cloud.points) best = std::min(best, dist2(p, q));
  return std::sqrt(best);
}

struct CoveringReport {
  bool covered = false;
  double worst = 0.0;        // max over a of distance to f
  std::size_t worst_index = 0;
};

// Is every point of `a` within eps (at tolerance) of some point of `f`?
inline CoveringReport covering_check(const PointCloud& a, const PointCloud& f,
                                     double eps, const Tolerance& tol = {}) {
  if (a.dim != f.dim) throw DimensionMismatch("covering_check: dim mismatch");
  if (eps < 0) throw ValidationError("covering_check: eps must be >= 0");
  CoveringReport rep;
  rep.covered = true;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const double d = distance_to_cloud(a.points[i], f);
    if (d > rep.worst) {
      rep.worst = d;
      rep.worst_index = i;
    }
  }
  rep.covered = rep.worst <= eps + tol.abs;
  return rep;
}

inline constexpr std::size_t kDefaultSumCap = 1'000'000;

// Brute-force pointwise Minkowski sum of the clouds, deduplicated. The
// pre-dedup enumeration size is capped; exceeding the cap throws.
inline PointCloud minkowski_sum_points(const std::vector<PointCloud>& clouds,
                                       std::size_t cap = kDefaultSumCap,
                                       const Tolerance& tol = {}) {
  if (clouds.empty()) throw ValidationError("minkowski sum of zero clouds");
  const int dim = clouds[0].dim;
  double count = 1.0;
  for (const auto& c : clouds) {
    if (c.dim != dim) throw DimensionMismatch("minkowski: dimension mismatch");
    if (c.points.empty()) throw ValidationError("minkowski: empty cloud");
    count *= static_cast<double>(c.points.size());
  }
  if (count > static_cast<double>(cap))
    throw CapExceeded("minkowski enumeration of " + std::to_string(count) +
                          " combinations exceeds cap",
                      count, static_cast<double>(cap));

  std::vector<Point> sums;
  sums.reserve(static_cast<std::size_t>(count));
  std::vector<std::size_t> idx(clouds.size(), 0);
  for (;;) {
    Point s(dim, 0.0);
    for (std::size_t i = 0; i < clouds.size(); ++i)
      axpy(s, 1.0, clouds[i].points[idx[i]]);
    sums.push_back(std::move(s));
    std::size_t k = 0;
    while (k < clouds.size() && ++idx[k] == clouds[k].points.size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == clouds.size()) break;
  }
  return make_cloud(dim, std::move(sums), tol);
}

// Distance from x to the pointwise sum of the clouds (exhaustive oracle).
inline double nearest_sum_distance(const std::vector<PointCloud>& clouds,
                                   const Point& x,
                                   std::size_t cap = kDefaultSumCap) {
  const PointCloud sum = minkowski_sum_points(clouds, cap);
  return distance_to_cloud(x, sum);
}

}  // namespace thicksum
