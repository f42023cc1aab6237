#pragma once

// Closed-form summand-count thresholds for interior certification of
// Minkowski sums, together with the optimal scale parameter.

#include <cmath>

#include "thicksum/errors.hpp"

namespace thicksum {

// phi(alpha, lambda, d) = sqrt(d) * (1 + lambda) / (lambda * (alpha - lambda)).
// A sum of n thick sets admits an interior certificate with parameters
// (alpha, lambda) as soon as n strictly exceeds this value.
inline double phi(double alpha, double lambda, int d) {
  if (d < 1) throw ValidationError("phi: dimension must be positive");
  if (!(lambda > 0.0) || !(lambda < alpha))
    throw ValidationError("phi: parameters must satisfy 0 < lambda < alpha");
  return std::sqrt(static_cast<double>(d)) * (1.0 + lambda) /
         (lambda * (alpha - lambda));
}

// Minimizer of lambda |-> phi(alpha, lambda, d) over (0, alpha).
inline double lambda_star(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("lambda_star: alpha must be positive");
  return std::sqrt(1.0 + alpha) - 1.0;
}

// Threshold at the optimal lambda: sqrt(d) * (sqrt(1+c)+1)^2 / c^2,
// algebraically equal to sqrt(d) / (sqrt(1+c)-1)^2.
inline double n_main(double c, int d) {
  if (d < 1) throw ValidationError("n_main: dimension must be positive");
  if (!(c > 0.0) || !(c <= 1.0))
    throw ValidationError("n_main: thickness constant must lie in (0, 1]");
  const double s = std::sqrt(1.0 + c) + 1.0;
  return std::sqrt(static_cast<double>(d)) * s * s / (c * c);
}

// Dimension-free alternative threshold: 2^11 * c^-3 + 1.
inline double n_fw(double c) {
  if (!(c > 0.0) || !(c <= 1.0))
    throw ValidationError("n_fw: thickness constant must lie in (0, 1]");
  return 2048.0 / (c * c * c) + 1.0;
}

// Dimension below which 6*sqrt(d)/c^2 beats the dimension-free bound:
// (1024/3)^2 * c^-2.
inline double crossover_dim(double c) {
  if (!(c > 0.0) || !(c <= 1.0))
    throw ValidationError("crossover_dim: thickness constant must lie in (0, 1]");
  const double k = 1024.0 / 3.0;
  return k * k / (c * c);
}

struct ThresholdReport {
  double c = 0.0;
  int d = 0;
  double n_main = 0.0;
  double n_fw = 0.0;
  double n_min = 0.0;
  double lambda_star_at_c = 0.0;
  double crossover_dim = 0.0;
};

inline ThresholdReport threshold_report(double c, int d) {
  ThresholdReport rep;
  rep.c = c;
  rep.d = d;
  rep.n_main = n_main(c, d);
  rep.n_fw = n_fw(c);
  rep.n_min = std::min(rep.n_main, rep.n_fw);
  rep.lambda_star_at_c = lambda_star(c);
  rep.crossover_dim = crossover_dim(c);
  return rep;
}

}  // namespace thicksum
