#include "coulombium/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"

namespace coulombium {
namespace {

// int_{-L}^{x} of the piecewise-linear interpolant of f.
double cumulative(const Samples& f, double x) {
  const Grid& grid = f.grid();
  const double L = grid.half_width();
  const double h = grid.spacing();
  if (x <= -L) return 0.0;
  x = std::min(x, L);
  const double pos = (x + L) / h;
  std::size_t cell = static_cast<std::size_t>(std::floor(pos));
  if (cell >= grid.size() - 1) cell = grid.size() - 2;
  double sum = 0.0;
  for (std::size_t i = 0; i < cell; ++i) sum += 0.5 * h * (f[i] + f[i + 1]);
  const double t = x - grid.x(cell);
  sum += f[cell] * t + (f[cell + 1] - f[cell]) * t * t / (2.0 * h);
  return sum;
}

double enclosed(const Samples& f, double r) {
  if (r <= 0.0) return 0.0;
  return cumulative(f, r) - cumulative(f, -r);
}

}  // namespace

ConcentrationProfile concentration_profile(const Samples& f, std::span<const double> radii) {
  ConcentrationProfile p;
  p.radii.assign(radii.begin(), radii.end());
  p.q.reserve(radii.size());
  double largest = -1.0;
  for (double r : radii) {
    p.q.push_back(enclosed(f, r));
    if (r >= largest) {
      largest = r;
      p.lambda_estimate = p.q.back();
    }
  }
  return p;
}

double tail_mass(const Samples& f, double radius) {
  const double total = integrate(f);
  if (total == 0.0) return 0.0;
  return (total - enclosed(f, radius)) / total;
}

double tightness_lower_bound(const Samples& f, double radius) {
  const Grid& grid = f.grid();
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    if (x > radius) plus += grid.weight(i) * f[i];
    if (x < -radius) minus += grid.weight(i) * f[i];
  }
  const double p = std::max(plus, minus);
  return radius * p * p;
}

double moment(const Samples& f, double p) {
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sum += grid.weight(i) * std::pow(std::fabs(grid.x(i)), p) * f[i];
  }
  return sum;
}

Samples counterexample_un(int n, const Grid& grid) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "counterexample index must be >= 1");
  const double nn = n;
  if (grid.half_width() < nn + 1.0) {
    throw Error(ErrorCode::GridTooSmall,
                "half-width must be at least n + 1 = " + std::to_string(n + 1));
  }
  if (grid.spacing() > 0.02) {
    throw Error(ErrorCode::UnderResolved, "counterexample needs spacing <= 0.02");
  }
  const double np1 = 1.0 + nn;
  const double amp = np1 * np1 * np1 / (2.0 * nn * nn * nn);
  return Samples::from_function(grid, [=](double x) {
    const double a = std::fabs(x);
    if (a > nn) return 0.0;
    const double d = amp * (1.0 / ((1.0 + a) * (1.0 + a)) - 1.0 / (np1 * np1) +
                            2.0 * (a - nn) / (np1 * np1 * np1));
    return d < 1e-16 ? 0.0 : std::sqrt(d);
  });
}

Grid counterexample_grid(int n, double target_spacing) {
  if (!(target_spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  const double L = n + 2.0;
  const auto half = static_cast<std::size_t>(std::ceil(L / target_spacing - 1e-9));
  return Grid(L, 2 * half + 1);
}

CounterexampleMetrics counterexample_metrics(int n, const Grid& grid, double z) {
  const Samples raw = counterexample_un(n, grid);
  CounterexampleMetrics m;
  m.n = n;
  m.raw_norm = integrate(pointwise_square(raw));
  const Samples u = normalized(raw);
  const Samples density = pointwise_square(u);
  m.norm = integrate(density);
  m.kinetic = kinetic_energy(u);
  m.c_value = c_functional(density, z);
  m.total = m.kinetic + m.c_value;
  return m;
}

UnboundednessScan unboundedness_scan(double z, std::span<const int> n_list,
                                     double target_spacing) {
  if (n_list.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a slope fit needs at least two n values");
  }
  UnboundednessScan scan;
  std::vector<double> logs, values;
  for (int n : n_list) {
    scan.rows.push_back(counterexample_metrics(n, counterexample_grid(n, target_spacing), z));
    logs.push_back(std::log(n + 1.0));
    values.push_back(scan.rows.back().c_value);
  }
  std::tie(scan.slope, scan.intercept) = least_squares_line(logs, values);
  return scan;
}

std::pair<double, double> least_squares_line(std::span<const double> x,
                                             std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "least squares needs two or more paired points");
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "least squares needs distinct x values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace coulombium
