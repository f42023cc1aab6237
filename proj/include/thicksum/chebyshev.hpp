#pragma once
// Chebyshev centers (largest ball inside a convex hull) via the facet LP
//   max rho  s.t.  <n_f, y> + rho <= offset_f  for every facet f,
// and LP feasibility certificates for membership y in conv(points).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"
#include "thicksum/hull.hpp"
#include "thicksum/lp.hpp"

namespace thicksum {

// Largest inscribed ball of a full-dimensional H-representation.
// Variables (all >= 0): y = u - v (free split), rho, one slack per facet.
inline Ball chebyshev_center(const HRepresentation& rep, const Tolerance& tol = {}) {
  (void)tol;
  const int d = rep.dim;
  const std::size_t F = rep.facets.size();
  if (F == 0) throw ValidationError("chebyshev_center: no facets");
  const std::size_t nvars = 2 * static_cast<std::size_t>(d) + 1 + F;
  std::vector<std::vector<double>> A(F, std::vector<double>(nvars, 0.0));
  std::vector<double> b(F, 0.0), c(nvars, 0.0);
  for (std::size_t f = 0; f < F; ++f) {
    for (int j = 0; j < d; ++j) {
      A[f][j] = rep.facets[f].normal[j];
      A[f][d + j] = -rep.facets[f].normal[j];
    }
    A[f][2 * d] = 1.0;      // rho
    A[f][2 * d + 1 + f] = 1.0;  // slack
    b[f] = rep.facets[f].offset;
  }
  c[2 * d] = -1.0;  // maximize rho

  const LpSolution sol = simplex_solve(A, b, c);
  if (sol.status != LpStatus::optimal)
    throw SolverFailure("chebyshev_center: LP did not reach an optimum");
  Ball ball;
  ball.center.resize(d);
  for (int j = 0; j < d; ++j) ball.center[j] = sol.x[j] - sol.x[d + j];
  ball.radius = std::max(0.0, sol.x[2 * d]);
  return ball;
}

// Chebyshev ball of conv(cloud). Degenerate clouds (affine hull below the
// ambient dimension) yield the radius-zero ball at the first cloud point.
// Dimension one avoids the LP: the ball of an interval is its midpoint.
inline Ball chebyshev_center(const PointCloud& cloud, const Tolerance& tol = {}) {
  if (cloud.points.empty()) throw ValidationError("chebyshev_center: empty cloud");
  if (cloud.dim == 1) {
    double lo = cloud.points[0][0], hi = lo;
    for (const auto& p : cloud.points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return Ball{Point{(lo + hi) / 2.0}, (hi - lo) / 2.0};
  }
  try {
    return chebyshev_center(convex_hull(cloud, tol), tol);
  } catch (const DegenerateInput&) {
    return Ball{cloud.points.front(), 0.0};
  }
}

// Convex-combination weights certifying y in conv(cloud): solves the phase-1
// feasibility problem  sum_i w_i p_i = y, sum_i w_i = 1, w >= 0.  Returns
// nothing when y is outside the hull (at tolerance).
inline std::optional<std::vector<double>> convex_weights(
    const PointCloud& cloud, const Point& y, const Tolerance& tol = {}) {
  check_point_dim(y, cloud.dim, "membership query");
  const std::size_t N = cloud.points.size();
  const int d = cloud.dim;
  std::vector<std::vector<double>> A(d + 1, std::vector<double>(N, 0.0));
  std::vector<double> b(d + 1, 0.0), c(N, 0.0);
  double scale = 1.0;
  for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(y[j]));
  for (std::size_t i = 0; i < N; ++i) {
    for (int j = 0; j < d; ++j) A[j][i] = cloud.points[i][j];
    A[d][i] = 1.0;
  }
  for (int j = 0; j < d; ++j) b[j] = y[j];
  b[d] = 1.0;

  const double feas = std::max(1e-8, 10.0 * tol.abs) * scale;
  const LpSolution sol = simplex_solve(A, b, c, feas);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  return sol.x;
}

}  // namespace thicksum
