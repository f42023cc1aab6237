#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "support/test_support.hpp"
#include "thicksum/geometry.hpp"

using namespace thicksum;
using Catch::Matchers::WithinAbs;

namespace {

PointCloud unit_square() {
  return make_cloud(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

// Sorted copy for set-wise comparison of clouds.
std::vector<Point> sorted_points(const PointCloud& c) {
  std::vector<Point> p = c.points;
  std::sort(p.begin(), p.end());
  return p;
}

bool set_equal(const PointCloud& a, const PointCloud& b, double tol) {
  if (a.points.size() != b.points.size()) return false;
  auto pa = sorted_points(a), pb = sorted_points(b);
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (dist(pa[i], pb[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("support function on the unit square") {
  const PointCloud sq = unit_square();
  const double s = 1.0 / std::sqrt(2.0);
  CHECK_THAT(support_function(sq, {s, s}), WithinAbs(std::sqrt(2.0), 1e-12));
  CHECK_THAT(support_function(sq, {1.0, 0.0}), WithinAbs(1.0, 1e-12));
  CHECK_THAT(support_function(sq, {-1.0, 0.0}), WithinAbs(0.0, 1e-12));
  CHECK_THAT(support_function(sq, {0.0, -1.0}), WithinAbs(0.0, 1e-12));
}

TEST_CASE("support function is unchanged by convexification") {
  ts_test::rng_t rng(18374691138699945602ULL);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const PointCloud cloud = ts_test::random_cloud(rng, d, 12);
    std::vector<Point> extended = cloud.points;
    for (int extra = 0; extra < 10; ++extra) {
      const auto w = ts_test::random_weights(rng, cloud.points.size());
      Point combo(d, 0.0);
      for (std::size_t i = 0; i < w.size(); ++i)
        axpy(combo, w[i], cloud.points[i]);
      extended.push_back(std::move(combo));
    }
    const PointCloud fat = make_cloud(d, extended);
    for (int k = 0; k < 10; ++k) {
      const Point u = ts_test::random_unit_vector(rng, d);
      CHECK_THAT(support_function(fat, u),
                 WithinAbs(support_function(cloud, u), 1e-9));
    }
  }
}

TEST_CASE("diameter") {
  CHECK_THAT(diameter(make_cloud(2, {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}})),
             WithinAbs(2.0 * std::sqrt(2.0), 1e-12));
  CHECK(diameter(make_cloud(3, {{1, 2, 3}})) == 0.0);
}

TEST_CASE("deduplication keeps the first representative") {
  const PointCloud c =
      make_cloud(2, {{0, 0}, {5e-10, 0}, {1, 1}, {1 + 2e-10, 1 - 2e-10}});
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[0] == Point{0, 0});
  CHECK(c.points[1] == Point{1, 1});
}

TEST_CASE("cloud validation") {
  CHECK_THROWS_AS(make_cloud(2, {}), ValidationError);
  CHECK_THROWS_AS(make_cloud(0, {{0.0}}), ValidationError);
  CHECK_THROWS_AS(make_cloud(2, {{0.0, 0.0}, {1.0}}), DimensionMismatch);
  CHECK_THROWS_AS(support_function(unit_square(), {1.0}), DimensionMismatch);
}

TEST_CASE("covering of finer middle-thirds levels by coarser ones") {
  const PointCloud fine = ts_test::cantor_endpoints(4);
  const PointCloud coarse = ts_test::cantor_endpoints(3);
  const auto ok = covering_check(fine, coarse, std::pow(3.0, -3));
  CHECK(ok.covered);
  // The farthest depth-4 endpoint from the depth-3 endpoints is one level-4
  // interval length away.
  CHECK_THAT(ok.worst, WithinAbs(std::pow(3.0, -4), 1e-12));
  const auto bad = covering_check(fine, coarse, std::pow(3.0, -5));
  CHECK_FALSE(bad.covered);
}

TEST_CASE("every cloud covers itself at any eps") {
  ts_test::rng_t rng(411u);
  const PointCloud c = ts_test::random_cloud(rng, 3, 30);
  for (double eps : {0.0, 1e-9, 0.5}) {
    const auto rep = covering_check(c, c, eps);
    CHECK(rep.covered);
    CHECK(rep.worst == 0.0);
  }
}

TEST_CASE("pointwise Minkowski sums deduplicate") {
  const PointCloud thirds = make_cloud(1, {{0}, {1.0 / 3}, {2.0 / 3}, {1}});
  const PointCloud sum = minkowski_sum_points({thirds, thirds});
  // The 16 pairwise sums collapse to the seven multiples of 1/3 in [0, 2].
  REQUIRE(sum.points.size() == 7);
  const auto pts = sorted_points(sum);
  for (int k = 0; k <= 6; ++k)
    CHECK_THAT(pts[k][0], WithinAbs(k / 3.0, 1e-12));

  const PointCloud binary = make_cloud(1, {{0}, {1}});
  CHECK(minkowski_sum_points({binary, binary}).points.size() == 3);
}

TEST_CASE("Minkowski sum is order-insensitive as a set") {
  ts_test::rng_t rng(92u);
  std::vector<PointCloud> clouds = {ts_test::random_cloud(rng, 2, 4),
                                    ts_test::random_cloud(rng, 2, 5),
                                    ts_test::random_cloud(rng, 2, 3)};
  const PointCloud a = minkowski_sum_points(clouds);
  std::swap(clouds[0], clouds[2]);
  const PointCloud b = minkowski_sum_points(clouds);
  CHECK(set_equal(a, b, 1e-9));
}

TEST_CASE("Minkowski enumeration cap") {
  ts_test::rng_t rng(7u);
  const PointCloud big = ts_test::random_cloud(rng, 1, 600, 0.0, 1e6);
  CHECK_THROWS_AS(minkowski_sum_points({big, big}, 100000), CapExceeded);
}

TEST_CASE("nearest sum distance oracle") {
  const PointCloud z = make_cloud(1, {{0.0}});
  CHECK_THAT(nearest_sum_distance({z, z}, {0.5}), WithinAbs(0.5, 1e-12));
  const PointCloud binary = make_cloud(1, {{0}, {1}});
  CHECK_THAT(nearest_sum_distance({binary, binary, binary}, {1.25}),
             WithinAbs(0.25, 1e-12));
}
