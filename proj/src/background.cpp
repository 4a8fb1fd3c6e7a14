#include "coulombium/background.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"

namespace coulombium {

BackgroundCharge BackgroundCharge::point(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::InvalidArgument, "point charge needs z > 0");
  }
  return BackgroundCharge(PointCharge{z});
}

BackgroundCharge BackgroundCharge::sampled(Samples rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] <= 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "background density must be nonpositive; node " + std::to_string(i) + " has " +
                      std::to_string(rho[i]));
    }
  }
  return BackgroundCharge(SampledCharge{std::move(rho)});
}

double BackgroundCharge::charge_ratio() const {
  if (is_point()) return as_point().z;
  return -integrate(as_sampled().rho);
}

double total_charge(const BackgroundCharge& bg) { return -bg.charge_ratio(); }

double abs_moment(const BackgroundCharge& bg) {
  if (bg.is_point()) return 0.0;
  const Samples& rho = bg.as_sampled().rho;
  Samples weighted(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    weighted[i] = std::fabs(rho.grid().x(i)) * std::fabs(rho[i]);
  }
  return integrate(weighted);
}

Samples background_potential(const BackgroundCharge& bg, const Grid& grid) {
  if (bg.is_point()) {
    const double z = bg.as_point().z;
    return Samples::from_function(grid, [z](double x) { return 0.5 * z * std::fabs(x); });
  }
  const Samples& rho = bg.as_sampled().rho;
  if (!(rho.grid() == grid)) {
    throw Error(ErrorCode::InvalidArgument, "sampled background lives on a different grid");
  }
  // -1/2 sum w |x - y| rho = 1/2 sum w |x - y| (-rho)
  return potential_from_density(rho);
}

double recenter_shift(const BackgroundCharge& bg) {
  if (bg.is_point()) return 0.0;
  const double z = bg.charge_ratio();
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, "recentring needs a net charge z > 0");
  const Samples& rho = bg.as_sampled().rho;
  Samples weighted(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) weighted[i] = rho.grid().x(i) * rho[i];
  return -integrate(weighted) / z;
}

double jensen_lower_bound_check(const BackgroundCharge& bg, const Grid& grid) {
  const double z = bg.charge_ratio();
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, "Jensen bound needs z > 0");
  const double shift = recenter_shift(bg);
  const Samples v = background_potential(bg, grid);
  double worst = -INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::fmax(worst, 0.5 * z * std::fabs(grid.x(i) - shift) - v[i]);
  }
  return worst;
}

Samples delta_approximant(int n, const Grid& grid) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "approximant index must be >= 1");
  const double width = 1.0 / static_cast<double>(n);
  if (grid.spacing() > 0.25 * width) {
    throw Error(ErrorCode::UnderResolved,
                "grid spacing " + std::to_string(grid.spacing()) + " exceeds 1/(4n) = " +
                    std::to_string(0.25 * width));
  }
  const double scale = static_cast<double>(n);
  Samples out = Samples::from_function(grid, [scale](double x) {
    const double t = scale * x;
    if (std::fabs(t) >= 1.0) return 0.0;
    return scale * std::exp(-1.0 / (1.0 - t * t));
  });
  const double mass = integrate(out);
  for (auto& v : out.values()) v /= mass;
  return out;
}

BackgroundCharge load_background(const std::filesystem::path& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open background file " + path.string());

  std::vector<std::pair<double, double>> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double x = 0.0, rho = 0.0;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string extra;
    if (!(fields >> x) || !(fields >> rho) || (fields >> extra)) {
      throw Error(ErrorCode::Io, path.string() + ":" + std::to_string(line_no) +
                                     ": expected two numeric columns (x rho)");
    }
    table.emplace_back(x, rho);
  }
  if (table.size() < 2) {
    throw Error(ErrorCode::Io, path.string() + ": need at least two (x, rho) rows");
  }
  std::sort(table.begin(), table.end());

  Samples rho(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    if (x < table.front().first || x > table.back().first) continue;
    auto hi = std::lower_bound(table.begin(), table.end(), x,
                               [](const auto& row, double v) { return row.first < v; });
    if (hi == table.begin()) {
      rho[i] = hi->second;
      continue;
    }
    const auto lo = hi - 1;
    const double span = hi->first - lo->first;
    const double t = span > 0.0 ? (x - lo->first) / span : 0.0;
    rho[i] = (1.0 - t) * lo->second + t * hi->second;
  }
  return BackgroundCharge::sampled(std::move(rho));
}

}  // namespace coulombium
