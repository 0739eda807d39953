#pragma once

#include <cstdint>
#include <vector>

#include "hdiff/error.hpp"

namespace hdiff {

/// Chebyshev-spaced radii r_i = r_max sin(pi (i + 1) / (2 n)), i = 0..n-1,
/// clustered toward r_max and ending exactly at r_max.
std::vector<double> chebyshev_radii(int n, double r_max);

/// Polar product grid: each radius of chebyshev_radii(n_radii, r_max) times
/// n_angles uniform angles, radius-major. With `include_center` the origin is
/// prepended.
std::vector<Complex> polar_grid(int n_radii = 24, int n_angles = 128, double r_max = 0.95,
                                bool include_center = true);

/// Points uniformly distributed in the disk |z| <= radius, from a fixed seed.
std::vector<Complex> random_disk_points(std::size_t count, double radius, std::uint64_t seed);

}  // namespace hdiff
