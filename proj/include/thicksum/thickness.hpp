#pragma once

// Thickness certification: at every sampled center and every geometric scale,
// the local point cloud's hull must contain a ball whose radius is a fixed
// fraction of the scale. The certified constant is the worst observed ratio
// damped by the scale step, which transfers the guarantee from the sampled
// scales to every scale in between.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "thicksum/chebyshev.hpp"
#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"
#include "thicksum/hull.hpp"
#include "thicksum/ifs.hpp"

namespace thicksum {

// Points of the cloud within distance r of x, in input order.
inline PointCloud points_within(const PointCloud& cloud, const Point& x, double r,
                                const Tolerance& tol = {}) {
  check_point_dim(x, cloud.dim, "window center");
  std::vector<Point> pts;
  const double r2 = (r + tol.abs) * (r + tol.abs);
  for (const auto& p : cloud.points)
    if (dist2(p, x) <= r2) pts.push_back(p);
  if (pts.empty()) throw ValidationError("window contains no cloud points");
  PointCloud out;
  out.dim = cloud.dim;
  out.points = std::move(pts);  // already deduplicated as a subset of a cloud
  return out;
}

struct DiscretizationWitness {
  PointCloud sub;         // the local cloud inside B(x, r)
  Ball ball;              // radius exactly alpha*r, centered at the local
                          // largest-inscribed-ball center
  double achieved_ratio;  // best radius/r actually available locally
};

// Produces the local finite witness at (x, r): the cloud points inside
// B(x, r) convexly contain a ball of radius alpha*r, obtained by shrinking
// the local largest inscribed ball (the shrink absorbs the perturbation from
// passing to a finite subset).
inline DiscretizationWitness finite_discretization_witness(const DiscretizedSet& set,
                                                           const Point& x, double r,
                                                           double alpha, double beta,
                                                           const Tolerance& tol = {}) {
  if (!(alpha > 0.0) || !(alpha < beta))
    throw ValidationError("witness parameters must satisfy 0 < alpha < beta");
  if (!(r > 0.0)) throw ValidationError("witness scale must be positive");
  if (r > set.diam + tol.abs)
    throw ValidationError("witness scale exceeds the set diameter");
  if (distance_to_cloud(x, set.cloud) > set.delta + tol.abs)
    throw ValidationError("witness center is not within the set's resolution");

  DiscretizationWitness out;
  out.sub = points_within(set.cloud, x, r, tol);
  const Ball inscribed = chebyshev_center(out.sub, tol);
  out.achieved_ratio = inscribed.radius / r;
  if (inscribed.radius + tol.abs < alpha * r)
    throw WitnessFailure("no ball of radius alpha*r fits in the local hull at the"
                         " requested center and scale",
                         x, r, out.achieved_ratio);
  out.ball = Ball{inscribed.center, alpha * r};
  return out;
}

struct ThicknessRequest {
  double c_target = 0.0;     // certificate succeeds iff c_certified >= c_target
  double scale_ratio = 0.9;  // geometric step between consecutive scales
  double floor = 0.0;        // finest scale examined; must stay above resolution
  int center_stride = 1;     // every stride-th cloud point serves as a center
};

struct ThicknessWitness {
  int center_index = 0;  // index into the cloud (the sampled center)
  int scale_index = 0;   // index into ThicknessCertificate::scales
  Ball ball;             // largest inscribed ball of the local hull
  double ratio = 0.0;    // ball.radius / scale
};

struct ThicknessCertificate {
  bool passed = false;
  double c_raw = 0.0;        // worst local ratio over the whole grid
  double c_certified = 0.0;  // c_raw * scale_ratio (scale-interpolation damping)
  double c_target = 0.0;
  double scale_ratio = 0.0;
  double caveat_floor = 0.0;  // finest scale actually certified
  std::vector<double> scales;
  std::vector<ThicknessWitness> witnesses;
  int worst_center = -1;
  int worst_scale = -1;
};

namespace thickness_detail {

// Sorted view of a one-dimensional cloud for fast window queries.
struct SortedLine {
  std::vector<double> values;
  explicit SortedLine(const PointCloud& cloud) {
    values.reserve(cloud.points.size());
    for (const auto& p : cloud.points) values.push_back(p[0]);
    std::sort(values.begin(), values.end());
  }
  // Hull of the window [x-r, x+r] as (lo, hi); the window is never empty when
  // x itself is a cloud point.
  std::pair<double, double> window_hull(double x, double r, double slack) const {
    auto lo = std::lower_bound(values.begin(), values.end(), x - r - slack);
    auto hi = std::upper_bound(values.begin(), values.end(), x + r + slack);
    return {*lo, *(hi - 1)};
  }
};

}  // namespace thickness_detail

inline ThicknessCertificate certify_thickness(const DiscretizedSet& set,
                                              const ThicknessRequest& req,
                                              const Tolerance& tol = {}) {
  const PointCloud& cloud = set.cloud;
  if (set.diam <= tol.abs)
    throw ValidationError(
        "thickness needs positive diameter: a singleton carries no local "
        "geometry to certify");
  if (!(req.scale_ratio > 0.0) || !(req.scale_ratio < 1.0))
    throw ValidationError("scale ratio must lie strictly in (0,1)");
  if (!(req.c_target > 0.0) || !(req.c_target <= 1.0))
    throw ValidationError("thickness target must lie in (0,1]");
  if (!(req.floor > 0.0)) throw ValidationError("scale floor must be positive");
  if (set.delta > 0.0 && req.floor < set.delta)
    throw ValidationError("resolution too coarse for the requested scale floor");
  if (req.center_stride < 1) throw ValidationError("center stride must be >= 1");

  ThicknessCertificate cert;
  cert.c_target = req.c_target;
  cert.scale_ratio = req.scale_ratio;
  for (double r = set.diam; r >= req.floor; r *= req.scale_ratio)
    cert.scales.push_back(r);
  if (cert.scales.empty())
    throw ValidationError("scale floor exceeds the set diameter");
  cert.caveat_floor = cert.scales.back();

  const bool line = (cloud.dim == 1);
  thickness_detail::SortedLine sorted =
      line ? thickness_detail::SortedLine(cloud)
           : thickness_detail::SortedLine(PointCloud{1, {Point{0.0}}});

  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t ci = 0; ci < cloud.points.size();
       ci += static_cast<std::size_t>(req.center_stride)) {
    const Point& x = cloud.points[ci];
    for (std::size_t si = 0; si < cert.scales.size(); ++si) {
      const double r = cert.scales[si];
      Ball inscribed;
      if (line) {
        const auto [lo, hi] = sorted.window_hull(x[0], r, tol.abs);
        inscribed = Ball{Point{(lo + hi) / 2.0}, (hi - lo) / 2.0};
      } else {
        inscribed = chebyshev_center(points_within(cloud, x, r, tol), tol);
      }
      const double ratio = inscribed.radius / r;
      cert.witnesses.push_back(
          {static_cast<int>(ci), static_cast<int>(si), inscribed, ratio});
      if (ratio < worst) {
        worst = ratio;
        cert.worst_center = static_cast<int>(ci);
        cert.worst_scale = static_cast<int>(si);
      }
    }
  }
  cert.c_raw = std::max(worst, 0.0);
  cert.c_certified = cert.c_raw * req.scale_ratio;
  cert.passed = cert.c_certified >= req.c_target;
  return cert;
}

struct ReplayReport {
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();
};

// Independently re-checks every stored witness: the ball of radius
// c_raw*scale at the stored center must pass the hull-containment test
// against the recomputed local cloud.
inline ReplayReport replay_witnesses(const DiscretizedSet& set,
                                     const ThicknessCertificate& cert,
                                     const Tolerance& tol = {}) {
  ReplayReport rep;
  for (const auto& w : cert.witnesses) {
    const Point& x = set.cloud.points[static_cast<std::size_t>(w.center_index)];
    const double r = cert.scales[static_cast<std::size_t>(w.scale_index)];
    const PointCloud sub = points_within(set.cloud, x, r, tol);
    const Ball ball{w.ball.center, cert.c_raw * r};
    const auto check = ball_in_hull(sub, ball, tol);
    rep.ok = rep.ok && check.inside;
    rep.worst_margin = std::min(rep.worst_margin, check.margin);
  }
  return rep;
}

}  // namespace thicksum
