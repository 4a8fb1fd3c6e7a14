#include "coulombium/random_fields.hpp"

#include <algorithm>
#include <cmath>

namespace coulombium {
namespace {

// Random node range [lo, hi] strictly inside the grid, at least a few nodes wide.
std::pair<std::size_t, std::size_t> random_interval(const Grid& grid, Rng& rng) {
  const std::size_t n = grid.size();
  const std::size_t min_width = std::min<std::size_t>(4, n - 2);
  std::uniform_int_distribution<std::size_t> pick(1, n - 2);
  std::size_t a = pick(rng), b = pick(rng);
  if (a > b) std::swap(a, b);
  if (b - a + 1 < min_width) {
    b = std::min(n - 2, a + min_width - 1);
    a = b + 1 - min_width;
  }
  return {a, b};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Samples random_smooth_density(const Grid& grid, Rng& rng, double support_fraction) {
  const double L = grid.half_width();
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> centre(-support_fraction * L, support_fraction * L);
  std::uniform_real_distribution<double> width(0.03 * L, 0.1 * L);
  std::uniform_real_distribution<double> height(0.2, 1.0);

  const int bumps = count(rng);
  std::vector<double> c(bumps), s(bumps), a(bumps);
  for (int k = 0; k < bumps; ++k) {
    c[k] = centre(rng);
    s[k] = std::max(width(rng), 4.0 * grid.spacing());
    a[k] = height(rng);
  }
  Samples f = Samples::from_function(grid, [&](double x) {
    double sum = 0.0;
    for (int k = 0; k < bumps; ++k) {
      const double t = (x - c[k]) / s[k];
      sum += a[k] * std::exp(-0.5 * t * t);
    }
    const double window = 1.0 - (x / L) * (x / L);
    return sum * window * window;
  });
  f[0] = 0.0;
  f[f.size() - 1] = 0.0;
  const double mass = integrate(f);
  for (auto& v : f.values()) v /= mass;
  return f;
}

Samples random_nonnegative(const Grid& grid, Rng& rng) {
  const auto [lo, hi] = random_interval(grid, rng);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  Samples f(grid);
  for (std::size_t i = lo; i <= hi; ++i) f[i] = value(rng);
  return f;
}

Samples random_signed(const Grid& grid, Rng& rng) {
  std::normal_distribution<double> value(0.0, 1.0);
  Samples f(grid);
  for (auto& v : f.values()) v = value(rng);
  return f;
}

Samples random_zero_mean_compact(const Grid& grid, Rng& rng) {
  const auto [lo, hi] = random_interval(grid, rng);
  std::normal_distribution<double> value(0.0, 1.0);
  Samples f(grid);
  double sum = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    f[i] = value(rng);
    sum += f[i];
  }
  // interior nodes share the weight h, so subtracting the plain mean zeroes the integral
  const double mean = sum / static_cast<double>(hi - lo + 1);
  for (std::size_t i = lo; i <= hi; ++i) f[i] -= mean;
  return f;
}

}  // namespace coulombium
