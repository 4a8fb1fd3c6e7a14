#pragma once

#include <functional>
#include <utility>

#include "coulombium/grid.hpp"

namespace coulombium {

/// Sorted values placed on nodes in order of increasing |x|; on each +-|x|
/// pair the larger value goes to the nonnegative node.
/// Throws Error(NegativeInput) for values below -1e-14.
Samples symmetric_decreasing_rearrangement(const Samples& f);

/// Returns (int f g, int f* g) for g(x) = profile(|x|), profile nondecreasing.
std::pair<double, double> hardy_littlewood_check(
    const Samples& f, const std::function<double(double)>& profile);

struct RearrangementReport {
  double e_before = 0.0;
  double e_after = 0.0;
  double kinetic_before = 0.0;
  double kinetic_after = 0.0;
  double coulomb_before = 0.0;
  double coulomb_after = 0.0;
  bool was_symmetric = false;
};

/// Energy terms of sqrt(f) and sqrt(f*), with the Coulomb term c_functional(., z).
RearrangementReport double_rearrangement_check(const Samples& f, double z);

}  // namespace coulombium
