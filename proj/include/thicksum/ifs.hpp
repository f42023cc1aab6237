#pragma once

// Contracting similarity systems and their finite discretizations: the cloud
// of all depth-k images of the maps' fixed points, together with an explicit
// resolution bound delta on the distance to the intended limit set.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"

namespace thicksum {

struct SimilarityMap {
  double ratio = 0.0;           // contraction factor, strictly inside (0,1)
  Point offset;                 // translation part
  std::vector<Point> rotation;  // row-major orthogonal matrix; empty = identity
};

struct IfsModel {
  int dim = 0;
  std::vector<SimilarityMap> maps;
};

// A finite stand-in for a compact set: every point of the intended set lies
// within delta of the cloud, and diam bounds the intended set's diameter.
struct DiscretizedSet {
  PointCloud cloud;
  double delta = 0.0;
  double diam = 0.0;
};

inline DiscretizedSet discretized_set(PointCloud cloud, double delta = 0.0) {
  if (delta < 0.0) throw ValidationError("resolution delta must be nonnegative");
  DiscretizedSet out;
  out.cloud = std::move(cloud);
  out.delta = delta;
  out.diam = diameter(out.cloud) + 2.0 * delta;
  return out;
}

namespace ifs_detail {

inline void validate_map(const SimilarityMap& f, int dim, std::size_t index) {
  const std::string where = "map " + std::to_string(index);
  if (!(f.ratio > 0.0) || !(f.ratio < 1.0))
    throw ValidationError(where + ": contraction ratio must lie strictly in (0,1)");
  check_point_dim(f.offset, dim, "similarity offset");
  if (f.rotation.empty()) return;
  if (f.rotation.size() != static_cast<std::size_t>(dim))
    throw ValidationError(where + ": rotation must be a square matrix");
  for (const auto& row : f.rotation)
    check_point_dim(row, dim, "rotation row");
  for (std::size_t i = 0; i < f.rotation.size(); ++i)
    for (std::size_t j = i; j < f.rotation.size(); ++j) {
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot(f.rotation[i], f.rotation[j]) - want) > 1e-9)
        throw ValidationError(where + ": rotation rows are not orthonormal");
    }
}

inline void validate_model(const IfsModel& model) {
  if (model.dim < 1) throw ValidationError("system dimension must be positive");
  if (model.maps.empty()) throw ValidationError("at least one similarity map required");
  for (std::size_t i = 0; i < model.maps.size(); ++i)
    validate_map(model.maps[i], model.dim, i);
}

}  // namespace ifs_detail

inline Point apply_map(const SimilarityMap& f, const Point& x) {
  Point rotated;
  if (f.rotation.empty()) {
    rotated = x;
  } else {
    rotated.assign(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) rotated[i] = dot(f.rotation[i], x);
  }
  Point out = f.offset;
  axpy(out, f.ratio, rotated);
  return out;
}

// The unique point p with f(p) = p: solve (I - ratio*Q) p = offset. The
// matrix is invertible because the ratio is below 1.
inline Point fixed_point(const SimilarityMap& f, int dim) {
  const std::size_t n = static_cast<std::size_t>(dim);
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double q = f.rotation.empty() ? (i == j ? 1.0 : 0.0) : f.rotation[i][j];
      a[i][j] = (i == j ? 1.0 : 0.0) - f.ratio * q;
    }
    a[i][n] = f.offset[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
    if (std::abs(a[best][col]) <= 1e-14)
      throw SolverFailure("fixed_point: singular system");
    std::swap(a[col], a[best]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double fac = a[i][col] / a[col][col];
      if (fac == 0.0) continue;
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= fac * a[col][j];
    }
  }
  Point p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i] = a[i][n] / a[i][i];
  return p;
}

// Depth-k discretization: every k-fold composition of the maps applied to the
// base points (the maps' fixed points, which belong to the limit set exactly,
// so the cloud is a genuine subset of it).
inline DiscretizedSet discretize(const IfsModel& model, int depth,
                                 std::size_t cap = kDefaultSumCap,
                                 const Tolerance& tol = {}) {
  ifs_detail::validate_model(model);
  if (depth < 0) throw ValidationError("discretization depth must be nonnegative");

  std::vector<Point> base;
  for (const auto& f : model.maps) base.push_back(fixed_point(f, model.dim));
  const PointCloud base_cloud = make_cloud(model.dim, base, tol);

  double count = static_cast<double>(base_cloud.points.size());
  for (int k = 0; k < depth; ++k) count *= static_cast<double>(model.maps.size());
  if (count > static_cast<double>(cap))
    throw CapExceeded("discretization would enumerate " + std::to_string(count) +
                          " points",
                      count, static_cast<double>(cap));

  std::vector<Point> level = base_cloud.points;
  for (int k = 0; k < depth; ++k) {
    std::vector<Point> next;
    next.reserve(level.size() * model.maps.size());
    for (const auto& f : model.maps)
      for (const auto& p : level) next.push_back(apply_map(f, p));
    level = dedupe_points(next, tol.abs);
  }

  double ratio_max = 0.0;
  for (const auto& f : model.maps) ratio_max = std::max(ratio_max, f.ratio);

  DiscretizedSet out;
  out.cloud = make_cloud(model.dim, std::move(level), tol);
  out.delta = std::pow(ratio_max, depth) * diameter(base_cloud) / (1.0 - ratio_max);
  out.diam = diameter(out.cloud) + 2.0 * out.delta;
  return out;
}

// The canonical one-dimensional test system: two maps contracting by 1/3
// toward 0 and toward 1.
inline IfsModel middle_thirds_model() {
  IfsModel model;
  model.dim = 1;
  model.maps.push_back({1.0 / 3.0, {0.0}, {}});
  model.maps.push_back({1.0 / 3.0, {2.0 / 3.0}, {}});
  return model;
}

}  // namespace thicksum
