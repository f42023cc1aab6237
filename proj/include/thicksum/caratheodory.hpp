#pragma once

// Conic combinations and support reduction: any nonnegative combination of
// vectors in R^m can be rewritten, value-preservingly, with at most m
// strictly positive terms by repeatedly cancelling along a linear dependence.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"

namespace thicksum {

struct ConicTerm {
  double lambda = 0.0;
  Point s;
};

struct ConicCombination {
  std::vector<ConicTerm> terms;
};

inline Point combination_value(const ConicCombination& comb, int dim) {
  Point v(static_cast<std::size_t>(dim), 0.0);
  for (const auto& t : comb.terms) axpy(v, t.lambda, t.s);
  return v;
}

namespace cara_detail {

// One nontrivial vector a with sum_j a[j]*columns[j] = 0. The columns must be
// linearly dependent; more columns than coordinates guarantees that.
inline std::vector<double> dependence_vector(const std::vector<Point>& columns) {
  const std::size_t n = columns.size();
  const std::size_t m = columns.front().size();
  std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
  double amax = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      a[i][j] = columns[j][i];
      amax = std::max(amax, std::abs(a[i][j]));
    }
  const double pivot_floor = 1e-12 * std::max(1.0, amax);

  // Row reduction with partial pivoting, tracking pivot columns.
  std::vector<std::size_t> pivot_cols;
  std::vector<char> is_pivot(n, 0);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < m; ++i)
      if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
    if (std::abs(a[best][col]) <= pivot_floor) continue;  // free column
    std::swap(a[row], a[best]);
    const double piv = a[row][col];
    for (std::size_t j = col; j < n; ++j) a[row][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = a[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_cols.push_back(col);
    is_pivot[col] = 1;
    ++row;
  }

  std::size_t free_col = n;
  for (std::size_t col = 0; col < n; ++col)
    if (!is_pivot[col]) {
      free_col = col;
      break;
    }
  if (free_col == n)
    throw SolverFailure("dependence_vector: columns are linearly independent");

  std::vector<double> dep(n, 0.0);
  dep[free_col] = 1.0;
  for (std::size_t r = 0; r < pivot_cols.size(); ++r)
    dep[pivot_cols[r]] = -a[r][free_col];
  return dep;
}

}  // namespace cara_detail

// Shrinks the support of a nonnegative combination to at most `target_terms`
// entries while preserving sum_j weights[j]*columns[j]. Returned weights use
// the input indexing; eliminated entries are exactly 0.
inline std::vector<double> reduce_support(const std::vector<Point>& columns,
                                          std::vector<double> weights,
                                          std::size_t target_terms) {
  if (columns.size() != weights.size())
    throw ValidationError("reduce_support: one weight per column required");
  auto active = [&weights] {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < weights.size(); ++j)
      if (weights[j] > 0.0) idx.push_back(j);
    return idx;
  };
  for (auto idx = active(); idx.size() > target_terms; idx = active()) {
    std::vector<Point> sub;
    sub.reserve(idx.size());
    for (std::size_t j : idx) sub.push_back(columns[j]);
    std::vector<double> dep = cara_detail::dependence_vector(sub);

    double pos = 0.0, neg = 0.0;
    for (double v : dep) {
      pos = std::max(pos, v);
      neg = std::max(neg, -v);
    }
    if (neg > pos)
      for (double& v : dep) v = -v;
    const double dep_max = std::max(pos, neg);

    // Largest step keeping all weights nonnegative; the binding entry is
    // zeroed out. Ties resolve to the lowest index for determinism.
    std::size_t cut = idx.size();
    double step = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (dep[k] <= 1e-12 * dep_max) continue;
      const double ratio = weights[idx[k]] / dep[k];
      if (cut == idx.size() || ratio < step) {
        cut = k;
        step = ratio;
      }
    }
    if (cut == idx.size())
      throw SolverFailure("reduce_support: dependence has no positive part");
    for (std::size_t k = 0; k < idx.size(); ++k) {
      double& w = weights[idx[k]];
      w -= step * dep[k];
      if (w < 0.0) w = 0.0;  // exact value is >= 0; clear rounding dust
    }
    weights[idx[cut]] = 0.0;
  }
  return weights;
}

// Rewrites a nonnegative combination in R^m with at most m strictly positive
// terms, preserving its value. A combination whose value is 0 (within
// tolerance) collapses to the empty combination.
inline ConicCombination conic_reduce(const ConicCombination& comb, int ambient_dim,
                                     const Tolerance& tol = {}) {
  if (ambient_dim < 1)
    throw ValidationError("conic_reduce: ambient dimension must be positive");
  std::vector<Point> columns;
  std::vector<double> weights;
  columns.reserve(comb.terms.size());
  weights.reserve(comb.terms.size());
  for (const auto& t : comb.terms) {
    check_point_dim(t.s, ambient_dim, "conic term");
    if (t.lambda < -tol.abs)
      throw ValidationError("conic_reduce: negative coefficient " +
                            std::to_string(t.lambda));
    columns.push_back(t.s);
    weights.push_back(std::max(t.lambda, 0.0));
  }
  {
    Point v(static_cast<std::size_t>(ambient_dim), 0.0);
    for (std::size_t j = 0; j < columns.size(); ++j) axpy(v, weights[j], columns[j]);
    if (norm(v) <= tol.abs) return {};
  }
  const auto reduced =
      reduce_support(columns, std::move(weights), static_cast<std::size_t>(ambient_dim));
  ConicCombination out;
  for (std::size_t j = 0; j < reduced.size(); ++j)
    if (reduced[j] > 0.0) out.terms.push_back({reduced[j], columns[j]});
  return out;
}

}  // namespace thicksum
