#pragma once

#include "coulombium/grid.hpp"

namespace coulombium {

/// The four iterated-integral orders for the half-line interaction
///   C+[f] = int_0^inf int_0^inf min(x, y) f(x) f(y) dx dy.
enum class CPlusForm {
  A,  ///< 2 int f(x) (int_0^x y f(y) dy) dx
  B,  ///< 2 int y f(y) (int_y^inf f) dy
  C,  ///< int_0^inf (int_z^inf f)^2 dz
  D,  ///< int f(x) (int_0^x (int_z^inf f) dz) dx
};

/// V_i = -1/2 sum_j w_j |x_i - x_j| f_j, in O(N) from partial moments.
Samples potential_from_density(const Samples& f);

/// sum_i w_i f_i (-sum_j w_j |x_i - x_j| g_j).
double coulomb_pair_energy(const Samples& f, const Samples& g);

/// min(|x|,|y|) for xy > 0, zero otherwise.
double min_kernel(double x, double y) noexcept;

/// g(x,y) = 1/2 [z(|x|+|y|) - |x-y|] = (z-1)(|x|+|y|)/2 + min_kernel(x,y).
double g_kernel(double x, double y, double z) noexcept;

struct CFunctional {
  double value;
  /// Set when integrate(f) is more than 1e-8 away from 1; the split into
  /// (z-1) int f int |x| f + C_G relies on unit mass.
  bool mass_warning;
};

CFunctional c_functional_checked(const Samples& f, double z);

/// sum_ij w_i w_j g(x_i,x_j) f_i f_j, computed as
/// (z-1) int f int |x| f + C+[f] + C+[f reflected].
double c_functional(const Samples& f, double z);

/// C+ of the restriction of f to x >= 0, evaluated by the chosen form.
/// All four forms are exact rearrangements of the same discrete double sum.
double c_plus(const Samples& f, CPlusForm form);

/// C_G[f] = c_functional(f, 1) without the mass check.
double c_g(const Samples& f);

/// Bilinear form b_G[f, g] = sum_ij w_i w_j min_kernel(x_i, x_j) f_i g_j.
double g_bilinear(const Samples& f, const Samples& g);

/// Quartic norm C_G[u^2]^{1/4}.
double b_norm(const Samples& u);

/// sum_ij w_i w_j (-|x_i - x_j|) f_i g_j for zero-mean f and g.
/// Throws Error(NonZeroMean) if |integrate(f)| or |integrate(g)| > 1e-8.
double neg_kernel_inner_product(const Samples& f, const Samples& g);

}  // namespace coulombium
