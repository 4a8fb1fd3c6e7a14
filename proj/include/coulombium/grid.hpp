#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace coulombium {

/// Uniform mesh on [-L, L] with an odd node count, so that x = 0 is the
/// centre node and x_i = -x_{N-1-i} holds exactly.
class Grid {
 public:
  /// Throws Error(InvalidArgument) unless L > 0, N odd and N >= 3.
  Grid(double half_width, std::size_t n_points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t center() const noexcept { return (n_points_ - 1) / 2; }

  double x(std::size_t i) const noexcept {
    return (static_cast<double>(i) - static_cast<double>(center())) * spacing_;
  }

  /// Trapezoid weight of node i.
  double weight(std::size_t i) const noexcept {
    return (i == 0 || i + 1 == n_points_) ? 0.5 * spacing_ : spacing_;
  }

  std::vector<double> nodes() const;

  bool operator==(const Grid&) const = default;

 private:
  double half_width_;
  std::size_t n_points_;
  double spacing_;
};

Grid make_grid(double half_width, std::size_t n_points);

/// Function values on the nodes of a grid.
class Samples {
 public:
  explicit Samples(Grid grid);
  Samples(Grid grid, std::vector<double> values);

  static Samples from_function(const Grid& grid,
                               const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Trapezoid rule over the whole grid.
double integrate(const Samples& f);

/// Forward-difference Dirichlet form sum (u_{i+1}-u_i)^2 / h.
double kinetic_energy(const Samples& u);

/// u_i -> u_{N-1-i}.
Samples reflect(const Samples& f);

Samples pointwise_square(const Samples& u);

/// a*f + b*g on a shared grid.
Samples linear_combination(double a, const Samples& f, double b, const Samples& g);

/// u / sqrt(integrate(u^2)).
Samples normalized(const Samples& u);

}  // namespace coulombium
