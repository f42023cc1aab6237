#pragma once

// Decomposing a point of conv(A_1)+...+conv(A_n) into exact summand choices
// plus at most d convexified summands, and rounding the convexified part to
// exact points with a derandomized error guarantee of R*sqrt(min{n,d}).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "thicksum/caratheodory.hpp"
#include "thicksum/chebyshev.hpp"
#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"
#include "thicksum/minimal_ball.hpp"

namespace thicksum {

// Per-summand convex coefficients; row i aligns with clouds[i].points.
using ConvexWitness = std::vector<std::vector<double>>;

struct SFDecomposition {
  int n = 0;
  int d = 0;
  std::vector<int> exceptional;  // ascending summand indices, at most d of them
  std::map<int, int> exact;      // summand -> cloud point index (coefficient 1)
  std::map<int, ConicCombination> convexified;          // summand -> combination
  std::map<int, std::vector<int>> convexified_support;  // summand -> point indices
};

inline Point decomposition_value(const SFDecomposition& dec,
                                 const std::vector<PointCloud>& clouds) {
  Point v(static_cast<std::size_t>(dec.d), 0.0);
  for (const auto& [i, j] : dec.exact)
    axpy(v, 1.0, clouds[static_cast<std::size_t>(i)].points[static_cast<std::size_t>(j)]);
  for (const auto& [i, comb] : dec.convexified) {
    (void)i;
    axpy(v, 1.0, combination_value(comb, dec.d));
  }
  return v;
}

struct RoundingResult {
  std::vector<Point> chosen;        // one point per summand, from that cloud
  std::vector<int> chosen_indices;  // indices into each cloud
  double error = 0.0;               // |target - sum of chosen|
  double bound = 0.0;               // guaranteed ceiling on error
};

namespace sf_detail {

inline void validate_witness(const std::vector<PointCloud>& clouds,
                             const ConvexWitness& coeffs, const Tolerance& tol) {
  if (clouds.empty()) throw ValidationError("at least one summand cloud required");
  const int d = clouds.front().dim;
  for (const auto& c : clouds)
    if (c.dim != d)
      throw DimensionMismatch("summand clouds live in different dimensions");
  if (coeffs.size() != clouds.size())
    throw ValidationError("one coefficient row per summand required");
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    if (coeffs[i].size() != clouds[i].points.size())
      throw ValidationError("coefficient row " + std::to_string(i) +
                            " does not match its cloud size");
    double sum = 0.0;
    for (double w : coeffs[i]) {
      if (w < -tol.abs)
        throw ValidationError("negative convex coefficient in row " +
                              std::to_string(i));
      sum += std::max(w, 0.0);
    }
    if (std::abs(sum - 1.0) > 10.0 * tol.abs)
      throw ValidationError("coefficients of row " + std::to_string(i) +
                            " sum to " + std::to_string(sum) + ", not 1");
  }
}

inline Point centroid(const PointCloud& cloud) {
  Point c(static_cast<std::size_t>(cloud.dim), 0.0);
  for (const auto& p : cloud.points) axpy(c, 1.0, p);
  for (double& v : c) v /= static_cast<double>(cloud.points.size());
  return c;
}

}  // namespace sf_detail

// Rewrites x = sum_i (convex combination over cloud i) so that all but at
// most d summands contribute a single exact cloud point: the combinations are
// tagged with unit markers, lifted to dimension d+n, and support-reduced to
// at most d+n terms, which leaves at most d summands with multiple terms.
// The reduction runs in coordinates centered at each cloud's centroid, so
// translated inputs produce the same combinatorial decomposition.
inline SFDecomposition sf_decompose(const std::vector<PointCloud>& clouds,
                                    const ConvexWitness& coeffs,
                                    const Tolerance& tol = {}) {
  sf_detail::validate_witness(clouds, coeffs, tol);
  const int n = static_cast<int>(clouds.size());
  const int d = clouds.front().dim;
  const std::size_t lift_dim = static_cast<std::size_t>(d + n);

  std::vector<Point> columns;
  std::vector<double> weights;
  std::vector<std::pair<int, int>> tags;  // (summand, cloud point index)
  std::vector<Point> centers(clouds.size());
  for (std::size_t i = 0; i < clouds.size(); ++i)
    centers[i] = sf_detail::centroid(clouds[i]);
  for (std::size_t i = 0; i < clouds.size(); ++i)
    for (std::size_t j = 0; j < clouds[i].points.size(); ++j) {
      const double w = coeffs[i][j];
      if (w <= 0.0) continue;
      Point col(lift_dim, 0.0);
      for (int k = 0; k < d; ++k)
        col[static_cast<std::size_t>(k)] = clouds[i].points[j][static_cast<std::size_t>(k)] -
                                           centers[i][static_cast<std::size_t>(k)];
      col[static_cast<std::size_t>(d) + i] = 1.0;
      columns.push_back(std::move(col));
      weights.push_back(w);
      tags.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

  const auto reduced = reduce_support(columns, std::move(weights), lift_dim);

  std::map<int, std::vector<std::pair<int, double>>> groups;
  for (std::size_t k = 0; k < reduced.size(); ++k)
    if (reduced[k] > 0.0)
      groups[tags[k].first].emplace_back(tags[k].second, reduced[k]);

  SFDecomposition out;
  out.n = n;
  out.d = d;
  for (const auto& [i, group] : groups) {
    if (group.size() == 1) {
      out.exact[i] = group.front().first;
    } else {
      out.exceptional.push_back(i);
      ConicCombination comb;
      std::vector<int> support;
      for (const auto& [j, w] : group) {
        comb.terms.push_back(
            {w, clouds[static_cast<std::size_t>(i)].points[static_cast<std::size_t>(j)]});
        support.push_back(j);
      }
      out.convexified[i] = std::move(comb);
      out.convexified_support[i] = std::move(support);
    }
  }
  if (static_cast<int>(groups.size()) != n)
    throw SolverFailure("sf_decompose: a summand lost all of its terms");
  if (static_cast<int>(out.exceptional.size()) > d)
    throw SolverFailure("sf_decompose: more than d summands stayed convexified");
  return out;
}

// Derandomized rounding: every cloud lies in a ball of the common radius
// around its center, each target y_i lies in conv(cloud i), and the greedy
// choice minimizing the running deviation guarantees |sum(chosen) - sum(y)|
// <= radius*sqrt(m). Ties take the lowest point index.
inline RoundingResult greedy_round(const std::vector<PointCloud>& clouds,
                                   const std::vector<Point>& ys,
                                   const std::vector<Point>& centers, double radius,
                                   const Tolerance& tol = {}) {
  const std::size_t m = clouds.size();
  if (m == 0) throw ValidationError("greedy_round: at least one summand required");
  if (ys.size() != m || centers.size() != m)
    throw ValidationError("greedy_round: clouds, targets, centers must align");
  if (!(radius > 0.0)) throw ValidationError("greedy_round: radius must be positive");
  const int d = clouds.front().dim;
  for (std::size_t i = 0; i < m; ++i) {
    if (clouds[i].dim != d)
      throw DimensionMismatch("greedy_round: summand dimension mismatch");
    check_point_dim(ys[i], d, "rounding target");
    check_point_dim(centers[i], d, "rounding center");
  }

  double worst_over = 0.0;
  std::string worst_where;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < clouds[i].points.size(); ++j) {
      const double over = dist(clouds[i].points[j], centers[i]) - radius;
      if (over > worst_over) {
        worst_over = over;
        worst_where = "cloud " + std::to_string(i) + " point " + std::to_string(j);
      }
    }
  if (worst_over > tol.abs)
    throw PremiseFailure("greedy_round: a summand point lies outside its radius ball",
                         "summand-in-ball", worst_where, worst_over);
  for (std::size_t i = 0; i < m; ++i)
    if (!convex_weights(clouds[i], ys[i], tol))
      throw PremiseFailure("greedy_round: target is not in the summand's hull",
                           "convex-membership", "cloud " + std::to_string(i), 0.0);

  RoundingResult out;
  out.bound = radius * std::sqrt(static_cast<double>(m));
  Point s(static_cast<std::size_t>(d), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < clouds[i].points.size(); ++j) {
      Point trial = s;
      axpy(trial, 1.0, clouds[i].points[j]);
      axpy(trial, -1.0, ys[i]);
      const double val = norm2(trial);
      if (val < best_val) {
        best_val = val;
        best = j;
      }
    }
    axpy(s, 1.0, clouds[i].points[best]);
    axpy(s, -1.0, ys[i]);
    out.chosen.push_back(clouds[i].points[best]);
    out.chosen_indices.push_back(static_cast<int>(best));
  }
  out.error = norm(s);
  if (out.error > out.bound + tol.abs)
    throw SolverFailure("greedy_round: error exceeded its guarantee");
  return out;
}

struct SfRoundReport {
  SFDecomposition decomposition;
  RoundingResult rounding;  // full-length: one chosen point per summand
  double radius = 0.0;      // largest enclosing-ball radius among the clouds
  Point target;             // the represented point x
};

// Full pipeline: decompose, then round only the convexified summands (at
// most min{n,d} of them), yielding error <= radius*sqrt(min{n,d}).
inline SfRoundReport sf_round(const std::vector<PointCloud>& clouds,
                              const ConvexWitness& coeffs, const Tolerance& tol = {}) {
  SfRoundReport report;
  report.decomposition = sf_decompose(clouds, coeffs, tol);
  const int n = report.decomposition.n;
  const int d = report.decomposition.d;

  report.target = Point(static_cast<std::size_t>(d), 0.0);
  for (std::size_t i = 0; i < clouds.size(); ++i)
    for (std::size_t j = 0; j < clouds[i].points.size(); ++j)
      axpy(report.target, coeffs[i][j], clouds[i].points[j]);

  std::vector<Ball> enclosing(clouds.size());
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    enclosing[i] = minimal_enclosing_ball(clouds[i]);
    report.radius = std::max(report.radius, enclosing[i].radius);
  }

  std::vector<Point> chosen(clouds.size());
  std::vector<int> chosen_idx(clouds.size(), -1);
  for (const auto& [i, j] : report.decomposition.exact) {
    chosen[static_cast<std::size_t>(i)] =
        clouds[static_cast<std::size_t>(i)].points[static_cast<std::size_t>(j)];
    chosen_idx[static_cast<std::size_t>(i)] = j;
  }
  if (!report.decomposition.exceptional.empty()) {
    std::vector<PointCloud> sub_clouds;
    std::vector<Point> sub_ys, sub_centers;
    for (int i : report.decomposition.exceptional) {
      sub_clouds.push_back(clouds[static_cast<std::size_t>(i)]);
      sub_ys.push_back(combination_value(report.decomposition.convexified.at(i), d));
      sub_centers.push_back(enclosing[static_cast<std::size_t>(i)].center);
    }
    const RoundingResult sub =
        greedy_round(sub_clouds, sub_ys, sub_centers, report.radius, tol);
    for (std::size_t k = 0; k < sub.chosen.size(); ++k) {
      const auto i =
          static_cast<std::size_t>(report.decomposition.exceptional[k]);
      chosen[i] = sub.chosen[k];
      chosen_idx[i] = sub.chosen_indices[k];
    }
  }

  Point sum(static_cast<std::size_t>(d), 0.0);
  for (const auto& p : chosen) axpy(sum, 1.0, p);
  report.rounding.chosen = std::move(chosen);
  report.rounding.chosen_indices = std::move(chosen_idx);
  report.rounding.error = dist(report.target, sum);
  report.rounding.bound =
      report.radius * std::sqrt(static_cast<double>(std::min(n, d)));
  if (report.rounding.error > report.rounding.bound + tol.abs)
    throw SolverFailure("sf_round: error exceeded the radius-form guarantee");
  return report;
}

inline RoundingResult sf_round_radius(const std::vector<PointCloud>& clouds,
                                      const ConvexWitness& coeffs,
                                      const Tolerance& tol = {}) {
  return sf_round(clouds, coeffs, tol).rounding;
}

inline double rounding_bound_sharp(double radius, int n, int d) {
  return radius * std::sqrt(static_cast<double>(std::min(n, d)));
}

// Dimension-only convenience form of the same guarantee (never smaller).
inline double rounding_bound_coarse(double radius, int d) {
  return radius * std::sqrt(static_cast<double>(d));
}

// Empirical almost-convexity check: samples random points of conv(sum of
// clouds) and returns the worst observed distance to the exact pointwise sum.
// The sampled points are sparse convex combinations (at most d+1 sum points),
// which reach every hull point in principle. Fixed seed => fixed result.
inline double residual_measure(const std::vector<PointCloud>& clouds, int samples,
                               std::uint64_t seed = 0, const Tolerance& tol = {},
                               std::size_t cap = kDefaultSumCap) {
  if (samples < 1) throw ValidationError("residual_measure: samples must be positive");
  const PointCloud sum = minkowski_sum_points(clouds, cap, tol);
  const int d = sum.dim;
  const int n = static_cast<int>(clouds.size());

  double radius = 0.0;
  for (const auto& c : clouds)
    radius = std::max(radius, minimal_enclosing_ball(c).radius);
  const double bound = rounding_bound_sharp(radius, n, d);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sum.points.size() - 1);
  std::exponential_distribution<double> expo(1.0);
  const std::size_t kmax =
      std::min<std::size_t>(sum.points.size(), static_cast<std::size_t>(d) + 1);

  double worst = 0.0;
  std::vector<std::size_t> chosen;
  for (int s = 0; s < samples; ++s) {
    const std::size_t k = 1 + rng() % kmax;
    chosen.clear();
    while (chosen.size() < k) {
      const std::size_t c = pick(rng);
      if (std::find(chosen.begin(), chosen.end(), c) == chosen.end())
        chosen.push_back(c);
    }
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& v : w) {
      v = expo(rng) + 1e-12;
      total += v;
    }
    Point y(static_cast<std::size_t>(d), 0.0);
    for (std::size_t j = 0; j < k; ++j) axpy(y, w[j] / total, sum.points[chosen[j]]);
    worst = std::max(worst, distance_to_cloud(y, sum));
  }
  if (worst > bound + tol.abs)
    throw SolverFailure("residual_measure: observed residual exceeded its bound");
  return worst;
}

}  // namespace thicksum
