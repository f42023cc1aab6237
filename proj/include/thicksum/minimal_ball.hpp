#pragma once

// Smallest enclosing ball of a point cloud (Welzl's algorithm with a
// deterministic shuffle). The returned radius is the exact maximum distance
// from the computed center, so containment holds by construction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"

namespace thicksum {
namespace meb_detail {

// Unique ball having every support point on its boundary. Support sets are
// affinely independent along Welzl's recursion, so the system is regular.
inline Ball circumball(const std::vector<Point>& support, int dim) {
  if (support.empty())
    return Ball{Point(static_cast<std::size_t>(dim), 0.0), -1.0};
  const Point& p0 = support.front();
  const std::size_t k = support.size() - 1;
  if (k == 0) return Ball{p0, 0.0};

  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Point di = sub(support[i + 1], p0);
    for (std::size_t j = 0; j < k; ++j)
      a[i][j] = 2.0 * dot(di, sub(support[j + 1], p0));
    a[i][k] = dot(di, di);
    for (std::size_t j = 0; j < k; ++j) scale = std::max(scale, std::abs(a[i][j]));
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t best = col;
    for (std::size_t i = col + 1; i < k; ++i)
      if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
    if (std::abs(a[best][col]) <= 1e-12 * std::max(1.0, scale))
      throw SolverFailure("circumball: degenerate support set");
    std::swap(a[col], a[best]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == col) continue;
      const double f = a[i][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[col][j];
    }
  }
  Point center = p0;
  for (std::size_t i = 0; i < k; ++i)
    axpy(center, a[i][k] / a[i][i], sub(support[i + 1], p0));
  return Ball{center, dist(center, p0)};
}

inline Ball welzl(const PointCloud& cloud, const std::vector<std::size_t>& order,
                  std::size_t n, std::vector<Point>& support) {
  if (n == 0 || support.size() == static_cast<std::size_t>(cloud.dim) + 1)
    return circumball(support, cloud.dim);
  const Point& p = cloud.points[order[n - 1]];
  Ball ball = welzl(cloud, order, n - 1, support);
  if (ball.radius >= 0.0 &&
      dist(p, ball.center) <= ball.radius * (1.0 + 1e-12) + 1e-14)
    return ball;
  support.push_back(p);
  Ball forced = welzl(cloud, order, n - 1, support);
  support.pop_back();
  return forced;
}

}  // namespace meb_detail

inline Ball minimal_enclosing_ball(const PointCloud& cloud) {
  std::vector<std::size_t> order(cloud.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(0x7c3b9d1f5a2e8461ULL);  // fixed: deterministic output
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Point> support;
  Ball ball = meb_detail::welzl(cloud, order, order.size(), support);
  double radius = 0.0;
  for (const auto& p : cloud.points) radius = std::max(radius, dist(ball.center, p));
  ball.radius = radius;
  return ball;
}

}  // namespace thicksum
