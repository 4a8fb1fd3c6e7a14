#include "coulombium/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"

namespace coulombium {
namespace {

Samples sqrt_of(const Samples& f) {
  Samples u(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) u[i] = std::sqrt(std::max(f[i], 0.0));
  return u;
}

}  // namespace

Samples symmetric_decreasing_rearrangement(const Samples& f) {
  std::vector<double> sorted(f.values().begin(), f.values().end());
  for (double v : sorted) {
    if (v < -1e-14) {
      throw Error(ErrorCode::NegativeInput, "rearrangement needs a nonnegative function");
    }
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  Samples out(f.grid());
  const std::size_t c = f.grid().center();
  out[c] = sorted[0];
  std::size_t next = 1;
  for (std::size_t k = 1; k <= c; ++k) {
    out[c + k] = sorted[next++];
    out[c - k] = sorted[next++];
  }
  return out;
}

std::pair<double, double> hardy_littlewood_check(const Samples& f,
                                                 const std::function<double(double)>& profile) {
  const Samples star = symmetric_decreasing_rearrangement(f);
  const Grid& grid = f.grid();
  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = profile(std::fabs(grid.x(i)));
    lhs += grid.weight(i) * f[i] * g;
    rhs += grid.weight(i) * star[i] * g;
  }
  return {lhs, rhs};
}

RearrangementReport double_rearrangement_check(const Samples& f, double z) {
  const Samples star = symmetric_decreasing_rearrangement(f);
  RearrangementReport report;
  report.kinetic_before = kinetic_energy(sqrt_of(f));
  report.kinetic_after = kinetic_energy(sqrt_of(star));
  report.coulomb_before = c_functional(f, z);
  report.coulomb_after = c_functional(star, z);
  report.e_before = report.kinetic_before + report.coulomb_before;
  report.e_after = report.kinetic_after + report.coulomb_after;

  double peak = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    peak = std::max(peak, std::fabs(f[i]));
    diff = std::max(diff, std::fabs(f[i] - star[i]));
  }
  report.was_symmetric = diff <= 1e-12 * std::max(peak, 1e-300);
  return report;
}

}  // namespace coulombium
