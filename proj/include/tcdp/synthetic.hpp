#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tcdp/error.hpp"
#include "tcdp/microdata.hpp"

namespace tcdp {

enum class ConfShape { uniform, skewed, bimodal };

inline std::string_view to_string(ConfShape s) {
  switch (s) {
    case ConfShape::uniform: return "uniform";
    case ConfShape::skewed: return "skewed";
    case ConfShape::bimodal: return "bimodal";
  }
  return "?";
}

inline ConfShape parse_shape(const std::string& name) {
  if (name == "uniform") return ConfShape::uniform;
  if (name == "skewed") return ConfShape::skewed;
  if (name == "bimodal") return ConfShape::bimodal;
  fail(errc::bad_spec, "unknown shape '" + name + "'");
}

// Recipe for a synthetic table: one categorical QI column carving the rows
// into the requested groups, one numeric confidential column drawn from the
// requested shape over value_range.
struct SyntheticSpec {
  std::size_t n = 0;
  std::vector<std::size_t> group_sizes;
  ConfShape shape = ConfShape::uniform;
  double shape_param = 0;  // skewed: power (default 3); bimodal: left-hump weight (default 0.5)
  Bounds value_range{0, 1000};
  std::uint64_t seed = 0;

  double param_or_default() const {
    if (shape_param > 0) return shape_param;
    return shape == ConfShape::skewed ? 3.0 : 0.5;
  }

  void validate() const {
    if (n < 1) fail(errc::bad_spec, "need n >= 1");
    if (group_sizes.empty()) fail(errc::bad_spec, "need at least one group");
    std::size_t sum = 0;
    for (auto g : group_sizes) {
      if (g < 1) fail(errc::bad_spec, "group sizes must be >= 1");
      sum += g;
    }
    if (sum != n) fail(errc::bad_spec, "group sizes sum to " + std::to_string(sum) + ", not n");
    if (!(value_range.width() > 0)) fail(errc::bad_spec, "value range must be nonempty");
    if (shape == ConfShape::bimodal && !(param_or_default() > 0 && param_or_default() < 1))
      fail(errc::bad_spec, "bimodal weight must lie in (0,1)");
  }
};

namespace detail {

// Bimodal humps sit on the outer 30% of the range on each side.
constexpr double kHumpFraction = 0.3;

inline double shape_quantile(const SyntheticSpec& spec, double u, double u2) {
  const double lo = spec.value_range.lo;
  const double range = spec.value_range.width();
  switch (spec.shape) {
    case ConfShape::uniform:
      return lo + u * range;
    case ConfShape::skewed:
      return lo + range * std::pow(u, spec.param_or_default());
    case ConfShape::bimodal: {
      const double hump = kHumpFraction * range;
      if (u < spec.param_or_default()) return lo + u2 * hump;
      return lo + range - hump + u2 * hump;
    }
  }
  fail(errc::bad_spec, "unreachable");
}

}  // namespace detail

// CDF of the requested shape; the goodness-of-fit oracle for generated data.
inline double shape_cdf(const SyntheticSpec& spec, double v) {
  const double lo = spec.value_range.lo;
  const double range = spec.value_range.width();
  auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  switch (spec.shape) {
    case ConfShape::uniform:
      return clamp01((v - lo) / range);
    case ConfShape::skewed:
      return std::pow(clamp01((v - lo) / range), 1.0 / spec.param_or_default());
    case ConfShape::bimodal: {
      const double hump = detail::kHumpFraction * range;
      const double w = spec.param_or_default();
      return w * clamp01((v - lo) / hump) + (1 - w) * clamp01((v - (lo + range - hump)) / hump);
    }
  }
  fail(errc::bad_spec, "unreachable");
}

inline Microdata random_dataset(const SyntheticSpec& spec) {
  spec.validate();
  Microdata data;
  AttributeSchema group_col;
  group_col.name = "group";
  group_col.role = Role::quasi_identifier;
  group_col.kind = Kind::categorical;
  AttributeSchema value_col;
  value_col.name = "value";
  value_col.role = Role::confidential;
  value_col.kind = Kind::numeric;
  value_col.bounds = spec.value_range;
  data.schema = {group_col, value_col};

  std::mt19937_64 gen(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int digits = 1;
  for (std::size_t g = spec.group_sizes.size(); g >= 10; g /= 10) ++digits;

  for (std::size_t g = 0; g < spec.group_sizes.size(); ++g) {
    std::string label = std::to_string(g + 1);
    label = "g" + std::string(static_cast<std::size_t>(digits) - std::min<std::size_t>(
                                  static_cast<std::size_t>(digits), label.size()),
                              '0') +
            label;
    for (std::size_t i = 0; i < spec.group_sizes[g]; ++i) {
      double u = unit(gen);
      double u2 = spec.shape == ConfShape::bimodal ? unit(gen) : 0.0;
      double v = detail::shape_quantile(spec, u, u2);
      v = std::min(spec.value_range.hi, std::max(spec.value_range.lo, v));
      data.records.push_back({Cell{label}, Cell{v}});
    }
  }
  return data;
}

}  // namespace tcdp
