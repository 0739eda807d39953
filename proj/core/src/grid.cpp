#include "hdiff/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace hdiff {

std::vector<double> chebyshev_radii(int n, double r_max) {
  if (n < 1) throw ValidationFailed(fmt::format("need at least one radius, got {}", n));
  if (!(r_max > 0.0 && r_max < 1.0))
    throw ValidationFailed(fmt::format("grid radius must lie in (0, 1), got {}", r_max));
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = r_max * std::sin(std::numbers::pi * (i + 1) / (2.0 * n));
  r.back() = r_max;
  return r;
}

std::vector<Complex> polar_grid(int n_radii, int n_angles, double r_max, bool include_center) {
  if (n_angles < 1) throw ValidationFailed(fmt::format("need at least one angle, got {}", n_angles));
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(n_radii) * n_angles + 1);
  if (include_center) grid.emplace_back(0.0, 0.0);
  for (double r : chebyshev_radii(n_radii, r_max))
    for (int j = 0; j < n_angles; ++j)
      grid.push_back(std::polar(r, 2.0 * std::numbers::pi * j / n_angles));
  return grid;
}

std::vector<Complex> random_disk_points(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts(count);
  for (auto& p : pts) {
    const double r = radius * std::sqrt(unit(rng));
    const double t = 2.0 * std::numbers::pi * unit(rng);
    p = std::polar(r, t);
  }
  return pts;
}

}  // namespace hdiff
