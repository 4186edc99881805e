#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "tcdp/distance.hpp"
#include "tcdp/error.hpp"

namespace tcdp {

// Additive Laplace noise with scale = sensitivity / epsilon. Draws are
// addressed by a 64-bit index so any cell's noise is reproducible without
// replaying a sequential stream.
struct LaplaceMechanism {
  double epsilon = 0;
  double sensitivity = 0;
  std::uint64_t seed = 0;

  double scale() const { return sensitivity / epsilon; }

  void validate() const {
    if (!(epsilon > 0)) fail(errc::bad_epsilon, "epsilon must be > 0");
    if (!(sensitivity > 0)) fail(errc::bad_epsilon, "sensitivity must be > 0");
  }
};

namespace rng {

// splitmix64 finalizer; full-period, good avalanche, trivially indexable.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in the open interval (0,1): 53 random bits offset by half an ulp.
inline double uniform_open(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = mix64(seed ^ mix64(index));
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rng

inline double laplace_sample(const LaplaceMechanism& mech, double true_value,
                             std::uint64_t draw_index) {
  mech.validate();
  double u = rng::uniform_open(mech.seed, draw_index);
  double s = mech.scale();
  // Inverse CDF, split at the median for symmetry.
  if (u < 0.5) return true_value + s * std::log(2.0 * u);
  return true_value - s * std::log(2.0 * (1.0 - u));
}

inline double laplace_pdf(double x, double center, double scale) {
  return std::exp(-std::abs(x - center) / scale) / (2.0 * scale);
}

// Uniform grid spanning [min(center) - 10*scale, max(center) + 10*scale].
// Beyond the extreme centers every component decays at the same rate, so
// mixture ratios are constant there and the endpoints capture the tails.
inline std::vector<double> laplace_grid(const std::vector<double>& centers, double scale,
                                        std::size_t resolution) {
  if (centers.empty()) fail(errc::empty_input, "no centers for grid");
  if (resolution < 2) fail(errc::grid_mismatch, "grid resolution must be >= 2");
  double lo = centers[0], hi = centers[0];
  for (double c : centers) {
    if (c < lo) lo = c;
    if (c > hi) hi = c;
  }
  lo -= 10.0 * scale;
  hi += 10.0 * scale;
  std::vector<double> points(resolution);
  double step = (hi - lo) / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) points[i] = lo + step * static_cast<double>(i);
  points.back() = hi;
  return points;
}

// Equal-weight Laplace mixture with one component per center.
inline GriddedDensity laplace_mixture(const std::vector<double>& centers, double scale,
                                      const std::vector<double>& grid) {
  if (centers.empty()) fail(errc::empty_input, "no centers for mixture");
  GriddedDensity g;
  g.points = grid;
  g.density.assign(grid.size(), 0.0);
  const double w = 1.0 / static_cast<double>(centers.size());
  for (double c : centers)
    for (std::size_t i = 0; i < grid.size(); ++i) g.density[i] += w * laplace_pdf(grid[i], c, scale);
  return g;
}

}  // namespace tcdp
