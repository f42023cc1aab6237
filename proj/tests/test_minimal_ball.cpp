#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "support/test_support.hpp"
#include "thicksum/minimal_ball.hpp"

using namespace thicksum;
using Catch::Matchers::WithinAbs;

namespace {

// Independent oracle: the smallest enclosing ball is determined by some
// subset of at most dim+1 points lying on its boundary, so enumerate all
// small subsets, solve each circumcenter directly, and keep the smallest
// candidate ball that covers the cloud.
std::optional<Point> subset_circumcenter(const std::vector<Point>& pts) {
  const std::size_t k = pts.size() - 1;
  const Point& p0 = pts.front();
  if (k == 0) return p0;
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    const Point di = sub(pts[i + 1], p0);
    for (std::size_t j = 0; j < k; ++j) a[i][j] = 2.0 * dot(di, sub(pts[j + 1], p0));
    a[i][k] = dot(di, di);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t best = col;
    for (std::size_t i = col + 1; i < k; ++i)
      if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
    if (std::abs(a[best][col]) < 1e-10) return std::nullopt;
    std::swap(a[col], a[best]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == col) continue;
      const double f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[col][j];
    }
  }
  Point c = p0;
  for (std::size_t i = 0; i < k; ++i) axpy(c, a[i][k] / a[i][i], sub(pts[i + 1], p0));
  return c;
}

double brute_force_radius(const PointCloud& cloud) {
  const std::size_t n = cloud.points.size();
  const std::size_t subset_max = static_cast<std::size_t>(cloud.dim) + 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick;
  auto consider = [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> pts;
    for (std::size_t i : idx) pts.push_back(cloud.points[i]);
    const auto center = subset_circumcenter(pts);
    if (!center) return;
    double r = 0.0;
    for (const auto& p : cloud.points) r = std::max(r, dist(*center, p));
    best = std::min(best, r);
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t want) {
    if (want == 0) {
      consider(pick);
      return;
    }
    for (std::size_t i = start; i + want <= n + 0; ++i) {
      if (i >= n) break;
      pick.push_back(i);
      rec(i + 1, want - 1);
      pick.pop_back();
    }
  };
  for (std::size_t size = 1; size <= std::min(subset_max, n); ++size) rec(0, size);
  return best;
}

}  // namespace

TEST_CASE("interval and singleton balls") {
  const Ball b = minimal_enclosing_ball(make_cloud(1, {{0.0}, {1.0}}));
  CHECK_THAT(b.center[0], WithinAbs(0.5, 1e-12));
  CHECK_THAT(b.radius, WithinAbs(0.5, 1e-12));

  const Ball s = minimal_enclosing_ball(make_cloud(2, {{3.0, 4.0}}));
  CHECK(s.radius == 0.0);
  CHECK(s.center == Point{3.0, 4.0});
}

TEST_CASE("right triangle: ball spans the hypotenuse") {
  const Ball b = minimal_enclosing_ball(make_cloud(2, {{0, 0}, {1, 0}, {0, 1}}));
  CHECK_THAT(b.center[0], WithinAbs(0.5, 1e-9));
  CHECK_THAT(b.center[1], WithinAbs(0.5, 1e-9));
  CHECK_THAT(b.radius, WithinAbs(std::sqrt(2.0) / 2.0, 1e-9));
}

TEST_CASE("square vertices") {
  const Ball b = minimal_enclosing_ball(make_cloud(2, {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
  CHECK_THAT(b.center[0], WithinAbs(0.0, 1e-9));
  CHECK_THAT(b.center[1], WithinAbs(0.0, 1e-9));
  CHECK_THAT(b.radius, WithinAbs(std::sqrt(2.0), 1e-9));
}

TEST_CASE("obtuse triangle: ball is spanned by the long side only") {
  const Ball b = minimal_enclosing_ball(make_cloud(2, {{0, 0}, {4, 0}, {1, 0.5}}));
  CHECK_THAT(b.center[0], WithinAbs(2.0, 1e-9));
  CHECK_THAT(b.center[1], WithinAbs(0.0, 1e-9));
  CHECK_THAT(b.radius, WithinAbs(2.0, 1e-9));
}

TEST_CASE("collinear points in the plane") {
  const Ball b = minimal_enclosing_ball(make_cloud(2, {{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}}));
  CHECK_THAT(b.center[0], WithinAbs(1.0, 1e-9));
  CHECK_THAT(b.center[1], WithinAbs(1.0, 1e-9));
  CHECK_THAT(b.radius, WithinAbs(std::sqrt(2.0), 1e-9));
}

TEST_CASE("containment is exact and the radius matches brute force") {
  ts_test::rng_t rng(0xbadbeefULL);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int npts = 2 + static_cast<int>(rng() % 9);
    const PointCloud cloud = ts_test::random_cloud(rng, d, npts);
    const Ball ball = minimal_enclosing_ball(cloud);
    for (const auto& p : cloud.points) CHECK(dist(p, ball.center) <= ball.radius);
    CHECK_THAT(ball.radius, WithinAbs(brute_force_radius(cloud), 1e-9));
  }
}

TEST_CASE("one-dimensional clouds: midpoint of the extremes") {
  ts_test::rng_t rng(11u);
  for (int trial = 0; trial < 15; ++trial) {
    const PointCloud cloud = ts_test::random_cloud(rng, 1, 12);
    double lo = cloud.points[0][0], hi = lo;
    for (const auto& p : cloud.points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    const Ball ball = minimal_enclosing_ball(cloud);
    CHECK_THAT(ball.center[0], WithinAbs((lo + hi) / 2.0, 1e-12));
    CHECK_THAT(ball.radius, WithinAbs((hi - lo) / 2.0, 1e-12));
  }
}

TEST_CASE("translation equivariance") {
  ts_test::rng_t rng(99u);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const PointCloud cloud = ts_test::random_cloud(rng, d, 10);
    const Point t = ts_test::random_point(rng, d);
    std::vector<Point> moved;
    for (const auto& p : cloud.points) moved.push_back(add(p, t));
    const Ball a = minimal_enclosing_ball(cloud);
    const Ball b = minimal_enclosing_ball(make_cloud(d, moved));
    CHECK(dist(add(a.center, t), b.center) <= 1e-9);
    CHECK_THAT(a.radius, WithinAbs(b.radius, 1e-9));
  }
}
