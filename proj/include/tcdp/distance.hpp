#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tcdp/distribution.hpp"
#include "tcdp/error.hpp"

namespace tcdp {

// Two-sided multiplicative distance value: a finite ratio >= 1, or INFINITE
// (some event has positive probability under one distribution and zero under
// the other). Kept as an explicit two-state value so serialization never
// leans on a floating-point infinity sentinel.
class ExtendedDistance {
 public:
  ExtendedDistance() : value_(1.0), infinite_(false) {}
  explicit ExtendedDistance(double v) : value_(v), infinite_(false) {}
  static ExtendedDistance infinite() {
    ExtendedDistance d;
    d.infinite_ = true;
    d.value_ = std::numeric_limits<double>::quiet_NaN();
    return d;
  }

  bool is_infinite() const { return infinite_; }
  double value() const {
    if (infinite_) fail(errc::bad_spec, "INFINITE distance has no finite value");
    return value_;
  }

  bool at_most(double threshold) const { return !infinite_ && value_ <= threshold; }

  friend bool operator==(const ExtendedDistance& a, const ExtendedDistance& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedDistance& a, const ExtendedDistance& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

  static ExtendedDistance max(const ExtendedDistance& a, const ExtendedDistance& b) {
    return a < b ? b : a;
  }

  std::string to_string() const {
    if (infinite_) return "inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value_);
    return std::string(buf, res.ptr);
  }

 private:
  double value_;
  bool infinite_;
};

namespace detail {

// Accumulates the max of two-sided ratios under the zero conventions:
// both sides zero -> the event is ignored; exactly one side zero -> INFINITE.
struct RatioMax {
  double best = 1.0;
  bool infinite = false;

  void add(double p, double q) {
    if (p == 0.0 && q == 0.0) return;
    if (p == 0.0 || q == 0.0) {
      infinite = true;
      return;
    }
    double r = p > q ? p / q : q / p;
    if (r > best) best = r;
  }

  // Exact path: the compared masses are a/base and b/base for integer
  // numerators; the ratio collapses to one correctly rounded division.
  void add_counts(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) return;
    if (a == 0 || b == 0) {
      infinite = true;
      return;
    }
    double r = a > b ? static_cast<double>(a) / static_cast<double>(b)
                     : static_cast<double>(b) / static_cast<double>(a);
    if (r > best) best = r;
  }

  ExtendedDistance result() const {
    return infinite ? ExtendedDistance::infinite() : ExtendedDistance(best);
  }
};

inline void require_same_alphabet(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.alphabet != b.alphabet)
    fail(errc::alphabet_mismatch, "distributions are over different alphabets");
}

}  // namespace detail

// Distance between two discrete distributions, computed over singletons
// (which suffices: any event's probability ratio is bounded by its worst
// member, by the mediant inequality). Count-backed distributions compare
// exact integers c1*T2 vs c2*T1 so ties and thresholds never drift.
inline ExtendedDistance ratio_distance(const DiscreteDistribution& d1,
                                       const DiscreteDistribution& d2) {
  detail::require_same_alphabet(d1, d2);
  detail::RatioMax acc;
  if (d1.has_counts() && d2.has_counts()) {
    for (std::size_t i = 0; i < d1.alphabet.size(); ++i)
      acc.add_counts(d1.counts[i] * d2.total, d2.counts[i] * d1.total);
  } else {
    for (std::size_t i = 0; i < d1.alphabet.size(); ++i) acc.add(d1.mass[i], d2.mass[i]);
  }
  return acc.result();
}

// Exhaustive subset oracle for the same distance: max over every nonempty
// event S of the two-sided probability ratio, identical zero conventions.
inline ExtendedDistance ratio_distance_brute(const DiscreteDistribution& d1,
                                             const DiscreteDistribution& d2) {
  detail::require_same_alphabet(d1, d2);
  const std::size_t n = d1.alphabet.size();
  if (n > 20) fail(errc::alphabet_too_large, "brute-force subset enumeration capped at 20 labels");
  detail::RatioMax acc;
  const std::uint32_t subsets = 1u << n;
  if (d1.has_counts() && d2.has_counts()) {
    for (std::uint32_t s = 1; s < subsets; ++s) {
      std::int64_t c1 = 0, c2 = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (s & (1u << i)) {
          c1 += d1.counts[i];
          c2 += d2.counts[i];
        }
      acc.add_counts(c1 * d2.total, c2 * d1.total);
    }
  } else {
    for (std::uint32_t s = 1; s < subsets; ++s) {
      double p = 0, q = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (s & (1u << i)) {
          p += d1.mass[i];
          q += d2.mass[i];
        }
      acc.add(p, q);
    }
  }
  return acc.result();
}

// Density evaluated on a shared strictly increasing grid. Stands in for an
// absolutely continuous distribution; the set-probability sup of the ratio
// distance equals the essential sup of the density ratio, approximated by
// the max over grid points.
struct GriddedDensity {
  std::vector<double> points;
  std::vector<double> density;

  double trapezoid_integral() const {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      acc += 0.5 * (density[i] + density[i + 1]) * (points[i + 1] - points[i]);
    return acc;
  }

  void validate() const {
    if (points.size() != density.size() || points.size() < 2)
      fail(errc::grid_mismatch, "grid needs matching point/density vectors of length >= 2");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      if (!(points[i] < points[i + 1])) fail(errc::grid_mismatch, "grid points not increasing");
    for (double v : density)
      if (!(v >= 0)) fail(errc::grid_mismatch, "negative density value");
  }
};

inline ExtendedDistance density_ratio_sup(const GriddedDensity& g1, const GriddedDensity& g2) {
  g1.validate();
  g2.validate();
  if (g1.points != g2.points) fail(errc::grid_mismatch, "densities live on different grids");
  if (std::abs(g1.trapezoid_integral() - 1.0) > 0.01 ||
      std::abs(g2.trapezoid_integral() - 1.0) > 0.01)
    fail(errc::not_normalized, "density does not integrate to 1 within 1%");
  detail::RatioMax acc;
  for (std::size_t i = 0; i < g1.points.size(); ++i) acc.add(g1.density[i], g2.density[i]);
  return acc.result();
}

}  // namespace tcdp
