#pragma once

#include "coulombium/background.hpp"
#include "coulombium/grid.hpp"

namespace coulombium {

struct EnergyBreakdown {
  double kinetic = 0.0;
  double coulomb = 0.0;
  /// 1/2 <rho, rho> for sampled backgrounds when requested; 0 otherwise.
  double background_const = 0.0;
  double total = 0.0;
};

/// E[u] = int u'^2 + 1/2 iint -|x-y| (u^2+rho)(u^2+rho).
/// Throws Error(NotNormalized) if |integrate(u^2) - 1| > 1e-8.
EnergyBreakdown total_energy(const Samples& u, const BackgroundCharge& bg,
                             bool include_background_self = false);

/// V = -1/2 int |x-y| (u^2 + rho) dy, so that -V'' = u^2 + rho.
Samples effective_potential(const Samples& u, const BackgroundCharge& bg);

/// dE/d(u^2) = 2V: the potential in the Euler-Lagrange equation of E,
///   -u'' + 2 V u = eps u.
Samples mean_field_potential(const Samples& u, const BackgroundCharge& bg);

/// (-D2 u + W u) at interior nodes; zero at the two Dirichlet ends.
Samples apply_hamiltonian(const Samples& u, const Samples& potential);

/// sqrt(h sum_interior r_i^2) for r = -D2 u + W u - eps u.
double hamiltonian_residual(const Samples& u, double epsilon, const Samples& potential);

/// Euler-Lagrange residual of E with multiplier epsilon.
double el_residual(const Samples& u, double epsilon, const BackgroundCharge& bg);

/// int (u'^2 + W u^2) with W = mean_field_potential.
double rayleigh_quotient(const Samples& u, const BackgroundCharge& bg);

/// [V V']_{-L}^{L} with one-sided differences at the ends; the boundary term
/// separating eq. E from the field-energy form. Reported, never asserted.
double boundary_flux_term(const Samples& potential);

}  // namespace coulombium
