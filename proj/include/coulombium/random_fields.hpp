#pragma once

#include <cstdint>
#include <random>

#include "coulombium/grid.hpp"

namespace coulombium {

using Rng = std::mt19937_64;

/// splitmix64 of (seed, stream): independent per-task seeds from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Sum of 1-4 Gaussian bumps inside |x| < support_fraction * L, unit mass,
/// zero at both ends of the grid.
Samples random_smooth_density(const Grid& grid, Rng& rng, double support_fraction = 0.6);

/// Nonnegative i.i.d. values on a random sub-interval; rough, not normalised.
Samples random_nonnegative(const Grid& grid, Rng& rng);

/// i.i.d. standard normal values.
Samples random_signed(const Grid& grid, Rng& rng);

/// Rough values on a random sub-interval with the grid mean removed, so that
/// integrate(f) vanishes to rounding.
Samples random_zero_mean_compact(const Grid& grid, Rng& rng);

}  // namespace coulombium
