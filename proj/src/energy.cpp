#include "coulombium/energy.hpp"

#include <cmath>
#include <string>

#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"

namespace coulombium {
namespace {

void require_background_grid(const BackgroundCharge& bg, const Grid& grid) {
  if (!bg.is_point() && !(bg.as_sampled().rho.grid() == grid)) {
    throw Error(ErrorCode::InvalidArgument, "background and wave function use different grids");
  }
}

double weighted_integral(const Samples& a, const Samples& b) {
  const Grid& grid = a.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += grid.weight(i) * a[i] * b[i];
  return sum;
}

}  // namespace

EnergyBreakdown total_energy(const Samples& u, const BackgroundCharge& bg,
                             bool include_background_self) {
  require_background_grid(bg, u.grid());
  const Samples density = pointwise_square(u);
  const double mass = integrate(density);
  if (std::fabs(mass - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized,
                "wave function has norm^2 " + std::to_string(mass) + ", expected 1");
  }

  EnergyBreakdown e;
  e.kinetic = kinetic_energy(u);
  if (bg.is_point()) {
    e.coulomb = c_functional(density, bg.as_point().z);
  } else {
    const Samples v_rho = background_potential(bg, u.grid());
    e.coulomb = 2.0 * weighted_integral(v_rho, density) +
                0.5 * coulomb_pair_energy(density, density);
    if (include_background_self) {
      const Samples& rho = bg.as_sampled().rho;
      e.background_const = 0.5 * coulomb_pair_energy(rho, rho);
    }
  }
  e.total = e.kinetic + e.coulomb + e.background_const;
  return e;
}

Samples effective_potential(const Samples& u, const BackgroundCharge& bg) {
  require_background_grid(bg, u.grid());
  return linear_combination(1.0, potential_from_density(pointwise_square(u)), 1.0,
                            background_potential(bg, u.grid()));
}

Samples mean_field_potential(const Samples& u, const BackgroundCharge& bg) {
  Samples w = effective_potential(u, bg);
  for (auto& v : w.values()) v *= 2.0;
  return w;
}

Samples apply_hamiltonian(const Samples& u, const Samples& potential) {
  const Grid& grid = u.grid();
  if (!(potential.grid() == grid)) {
    throw Error(ErrorCode::InvalidArgument, "potential lives on a different grid");
  }
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  Samples out(grid);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    out[i] = (2.0 * u[i] - u[i - 1] - u[i + 1]) * inv_h2 + potential[i] * u[i];
  }
  return out;
}

double hamiltonian_residual(const Samples& u, double epsilon, const Samples& potential) {
  const Samples hu = apply_hamiltonian(u, potential);
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const double r = hu[i] - epsilon * u[i];
    sum += r * r;
  }
  return std::sqrt(u.grid().spacing() * sum);
}

double el_residual(const Samples& u, double epsilon, const BackgroundCharge& bg) {
  return hamiltonian_residual(u, epsilon, mean_field_potential(u, bg));
}

double rayleigh_quotient(const Samples& u, const BackgroundCharge& bg) {
  const Samples w = mean_field_potential(u, bg);
  return kinetic_energy(u) + weighted_integral(w, pointwise_square(u));
}

double boundary_flux_term(const Samples& potential) {
  const std::size_t n = potential.size();
  const double h = potential.grid().spacing();
  const double slope_right = (potential[n - 1] - potential[n - 2]) / h;
  const double slope_left = (potential[1] - potential[0]) / h;
  return potential[n - 1] * slope_right - potential[0] * slope_left;
}

}  // namespace coulombium
