#include "coulombium/grid.hpp"

#include <cmath>
#include <string>

#include "coulombium/error.hpp"

namespace coulombium {

Grid::Grid(double half_width, std::size_t n_points)
    : half_width_(half_width), n_points_(n_points), spacing_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorCode::InvalidArgument, "grid half-width must be positive and finite");
  }
  if (n_points < 3 || n_points % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid needs an odd number of points >= 3, got " + std::to_string(n_points));
  }
  spacing_ = half_width / static_cast<double>(center());
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) xs[i] = x(i);
  return xs;
}

Grid make_grid(double half_width, std::size_t n_points) { return Grid(half_width, n_points); }

Samples::Samples(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

Samples::Samples(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "sample count " + std::to_string(values_.size()) + " does not match grid size " +
                    std::to_string(grid_.size()));
  }
}

Samples Samples::from_function(const Grid& grid, const std::function<double(double)>& fn) {
  Samples out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid.x(i));
  return out;
}

double integrate(const Samples& f) {
  const auto v = f.values();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) interior += v[i];
  return f.grid().spacing() * (interior + 0.5 * (v.front() + v.back()));
}

double kinetic_energy(const Samples& u) {
  const auto v = u.values();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    sum += d * d;
  }
  return sum / u.grid().spacing();
}

Samples reflect(const Samples& f) {
  Samples out(f.grid());
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = f[n - 1 - i];
  return out;
}

Samples pointwise_square(const Samples& u) {
  Samples out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * u[i];
  return out;
}

Samples linear_combination(double a, const Samples& f, double b, const Samples& g) {
  if (!(f.grid() == g.grid())) {
    throw Error(ErrorCode::InvalidArgument, "samples live on different grids");
  }
  Samples out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = a * f[i] + b * g[i];
  return out;
}

Samples normalized(const Samples& u) {
  const double norm2 = integrate(pointwise_square(u));
  if (!(norm2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalise a zero function");
  Samples out(u);
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& v : out.values()) v *= scale;
  return out;
}

}  // namespace coulombium
