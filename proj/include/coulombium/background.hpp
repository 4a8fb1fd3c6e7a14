#pragma once

#include <filesystem>
#include <variant>

#include "coulombium/grid.hpp"

namespace coulombium {

struct PointCharge {
  double z;
};

struct SampledCharge {
  Samples rho;
};

/// Fixed background: a point charge -z delta_0 handled symbolically, or a
/// sampled nonpositive density.
class BackgroundCharge {
 public:
  static BackgroundCharge point(double z);
  /// Throws Error(InvalidArgument) if any sample is positive.
  static BackgroundCharge sampled(Samples rho);

  bool is_point() const noexcept { return std::holds_alternative<PointCharge>(model_); }
  const PointCharge& as_point() const { return std::get<PointCharge>(model_); }
  const SampledCharge& as_sampled() const { return std::get<SampledCharge>(model_); }

  /// z = -total_charge.
  double charge_ratio() const;

 private:
  explicit BackgroundCharge(std::variant<PointCharge, SampledCharge> model)
      : model_(std::move(model)) {}

  std::variant<PointCharge, SampledCharge> model_;
};

double total_charge(const BackgroundCharge& bg);
double abs_moment(const BackgroundCharge& bg);

/// V_rho(x) = 1/2 int |x - y| (-rho(y)) dy; exactly (z/2)|x| for a point charge.
/// A sampled background must live on `grid`.
Samples background_potential(const BackgroundCharge& bg, const Grid& grid);

/// P = -(1/z) int x rho(x) dx; zero for a point charge.
double recenter_shift(const BackgroundCharge& bg);

/// max_i [(z/2)|x_i - P| - V_rho(x_i)]; nonpositive by Jensen.
double jensen_lower_bound_check(const BackgroundCharge& bg, const Grid& grid);

/// Samples of n phi(n x) with phi the standard mollifier, normalised so the
/// grid integral is 1. Throws Error(UnderResolved) if h > 1/(4n).
Samples delta_approximant(int n, const Grid& grid);

/// Two-column (x, rho) text file, '#' comments, resampled onto `grid` by
/// linear interpolation (zero outside the tabulated range).
BackgroundCharge load_background(const std::filesystem::path& path, const Grid& grid);

}  // namespace coulombium
