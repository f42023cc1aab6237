#pragma once
// Dense two-phase primal simplex for small linear programs in equality
// standard form:
//
//   min c.x   subject to   A x = b,  x >= 0.
//
// Pivoting follows Bland's smallest-index rule in both phases, which rules
// out cycling, so every solve terminates. Problem sizes here are desk scale
// (tens to a few hundred rows), so a full tableau is the simplest correct
// choice.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "thicksum/errors.hpp"

namespace thicksum {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;   // structural variables only
  double objective = 0.0;  // c.x at the returned point
};

namespace lp_detail {

constexpr double kPivotEps = 1e-11;
constexpr std::size_t kMaxPivots = 200000;

struct Tableau {
  std::size_t m = 0;  // rows
  std::size_t n = 0;  // structural columns
  std::vector<std::vector<double>> row;  // m rows of n + m entries
  std::vector<double> rhs;               // length m, kept >= 0 up to roundoff
  std::vector<std::size_t> basis;        // basis[i] = column basic in row i
  std::vector<char> active;              // redundant rows get deactivated
  std::vector<double> cost;              // reduced-cost row, n + m entries
  double cost_rhs = 0.0;                 // negative of current objective

  void pivot(std::size_t r, std::size_t col) {
    const double piv = row[r][col];
    for (auto& v : row[r]) v /= piv;
    rhs[r] /= piv;
    row[r][col] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || !active[i]) continue;
      const double f = row[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < row[i].size(); ++j) row[i][j] -= f * row[r][j];
      row[i][col] = 0.0;
      rhs[i] -= f * rhs[r];
    }
    const double fc = cost[col];
    if (fc != 0.0) {
      for (std::size_t j = 0; j < cost.size(); ++j) cost[j] -= fc * row[r][j];
      cost[col] = 0.0;
      cost_rhs -= fc * rhs[r];
    }
    basis[r] = col;
  }

  // Bland: entering = lowest-index improving column, leaving = ratio-test
  // minimum with ties broken by the lowest basic variable index.
  // `limit` restricts entering columns to indices < limit.
  LpStatus run(std::size_t limit) {
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost[j] < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return LpStatus::optimal;

      std::size_t leave = m;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!active[i] || row[i][enter] <= kPivotEps) continue;
        const double ratio = rhs[i] / row[i][enter];
        if (leave == m || ratio < best_ratio - kPivotEps ||
            (ratio < best_ratio + kPivotEps && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    throw SolverFailure("simplex: pivot limit exceeded");
  }
};

}  // namespace lp_detail

inline LpSolution simplex_solve(std::vector<std::vector<double>> A,
                                std::vector<double> b,
                                const std::vector<double>& c,
                                double feas_tol = 1e-8) {
  using namespace lp_detail;
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw SolverFailure("simplex: rhs size mismatch");
  for (std::size_t i = 0; i < m; ++i)
    if (A[i].size() != n) throw SolverFailure("simplex: ragged constraint row");

  Tableau t;
  t.m = m;
  t.n = n;
  t.row.assign(m, std::vector<double>(n + m, 0.0));
  t.rhs.assign(m, 0.0);
  t.basis.assign(m, 0);
  t.active.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = (b[i] < 0.0) ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.row[i][j] = s * A[i][j];
    t.rhs[i] = s * b[i];
    t.row[i][n + i] = 1.0;
    t.basis[i] = n + i;
  }

  // Phase 1: minimize the sum of artificials. With the artificial basis the
  // canonical reduced costs are -(column sums over structural columns).
  t.cost.assign(n + m, 0.0);
  t.cost_rhs = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.cost[j] -= t.row[i][j];
    t.cost_rhs -= t.rhs[i];
  }
  if (t.run(n) == LpStatus::unbounded)
    throw SolverFailure("simplex: phase 1 unbounded");
  const double infeasibility = -t.cost_rhs;
  if (infeasibility > feas_tol) {
    LpSolution s;
    s.status = LpStatus::infeasible;
    s.objective = infeasibility;
    return s;
  }

  // Drive leftover artificials out of the basis; rows where that is
  // impossible are redundant and get dropped.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t.row[i][j]) > kPivotEps) {
        col = j;
        break;
      }
    }
    if (col == n) {
      t.active[i] = 0;
    } else {
      t.pivot(i, col);
    }
  }

  // Phase 2: rebuild the reduced-cost row for the real objective.
  t.cost.assign(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = c[j];
  t.cost_rhs = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!t.active[i]) continue;
    const double cb = (t.basis[i] < n) ? c[t.basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < t.cost.size(); ++j) t.cost[j] -= cb * t.row[i][j];
    t.cost_rhs -= cb * t.rhs[i];
  }
  const LpStatus st = t.run(n);

  LpSolution sol;
  sol.status = st;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.active[i] && t.basis[i] < n)
      sol.x[t.basis[i]] = std::max(0.0, t.rhs[i]);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];
  return sol;
}

}  // namespace thicksum
