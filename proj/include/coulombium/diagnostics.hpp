#pragma once

#include <span>
#include <vector>

#include "coulombium/grid.hpp"

namespace coulombium {

struct ConcentrationProfile {
  std::vector<double> radii;
  std::vector<double> q;
  double lambda_estimate = 0.0;
};

/// Q[f](r) = int_{-r}^{r} f of the piecewise-linear interpolant.
ConcentrationProfile concentration_profile(const Samples& f, std::span<const double> radii);

/// 1 - Q[f](R) relative to integrate(f).
double tail_mass(const Samples& f, double radius);

/// R * max(P+, P-)^2, P+- the node masses strictly beyond +-R.
double tightness_lower_bound(const Samples& f, double radius);

/// int |x|^p f.
double moment(const Samples& f, double p);

/// u_n with u_n^2 = (1+n)^3/(2n^3) (1/(1+|x|)^2 - 1/(1+n)^2 + 2(|x|-n)/(1+n)^3)
/// on [-n, n]. Throws Error(GridTooSmall) if L < n + 1 and
/// Error(UnderResolved) if h > 0.02.
Samples counterexample_un(int n, const Grid& grid);

struct CounterexampleMetrics {
  int n = 0;
  double raw_norm = 0.0;  ///< integrate(u_n^2) before grid renormalisation
  double norm = 0.0;
  double kinetic = 0.0;
  double c_value = 0.0;
  double total = 0.0;
};

struct UnboundednessScan {
  std::vector<CounterexampleMetrics> rows;
  double slope = 0.0;      ///< least-squares d c_value / d log(n+1)
  double intercept = 0.0;
};

/// Grid coupled to n: L = n + 2, N odd with h <= target_spacing.
Grid counterexample_grid(int n, double target_spacing = 0.01);

CounterexampleMetrics counterexample_metrics(int n, const Grid& grid, double z);

UnboundednessScan unboundedness_scan(double z, std::span<const int> n_list,
                                     double target_spacing = 0.01);

/// Ordinary least squares y = a + b x; returns {b, a}.
std::pair<double, double> least_squares_line(std::span<const double> x,
                                             std::span<const double> y);

}  // namespace coulombium
