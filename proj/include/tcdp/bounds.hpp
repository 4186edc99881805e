#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tcdp/error.hpp"

namespace tcdp {

enum class BoundDirection { dp_to_t, t_to_dp };

// Ties a release to its converted privacy guarantee: which direction the
// conversion ran, both parameters, and the class layout the bound saw.
struct BoundCertificate {
  BoundDirection direction = BoundDirection::dp_to_t;
  double epsilon = 0;
  double t = 1;
  std::size_t n = 0;
  std::vector<std::size_t> class_sizes;
  std::size_t attained_size = 0;  // dp_to_t: class size at which the max is attained
  std::string formula_note;
};

// Per-class conversion term (|E| + (N-|E|) * e^eps) / N. Decreasing in |E|
// for eps > 0, so the overall bound is attained at the smallest class.
//
// The full coefficient (N-|E|) is the default: it degenerates to t = 1 at
// eps = 0 as a ratio distance must. The minus-one variant (N-|E|-1) is
// computable for comparison but dips below 1 there.
inline double dp_to_t_term(std::size_t n, std::size_t class_size, double epsilon,
                           bool minus_one_coefficient = false) {
  double others = static_cast<double>(n - class_size);
  if (minus_one_coefficient) others -= 1.0;
  return (static_cast<double>(class_size) + others * std::exp(epsilon)) / static_cast<double>(n);
}

inline BoundCertificate dp_to_t_bound(std::size_t n, const std::vector<std::size_t>& class_sizes,
                                      double epsilon, bool minus_one_coefficient = false) {
  if (!(epsilon >= 0)) fail(errc::bad_epsilon, "epsilon must be >= 0");
  if (class_sizes.empty()) fail(errc::sizes_mismatch, "no class sizes given");
  std::size_t sum = 0;
  for (auto s : class_sizes) {
    if (s < 1) fail(errc::sizes_mismatch, "class size must be >= 1");
    sum += s;
  }
  if (sum != n)
    fail(errc::sizes_mismatch, "class sizes sum to " + std::to_string(sum) + ", not N = " +
                                   std::to_string(n));
  BoundCertificate cert;
  cert.direction = BoundDirection::dp_to_t;
  cert.epsilon = epsilon;
  cert.n = n;
  cert.class_sizes = class_sizes;
  cert.formula_note = minus_one_coefficient
                          ? "dp_to_t: t = max_E (|E|/N)(1 + ((N-|E|-1)/|E|) e^eps) [minus-one coefficient]"
                          : "dp_to_t: t = max_E (|E|/N)(1 + ((N-|E|)/|E|) e^eps) [full coefficient]";
  double best = -1;
  for (auto s : class_sizes) {
    double term = dp_to_t_term(n, s, epsilon, minus_one_coefficient);
    if (term > best) {
      best = term;
      cert.attained_size = s;
    }
  }
  cert.t = best;
  return cert;
}

// Inverse direction: exp(eps/2)-closeness gives eps-differential privacy,
// so a table satisfying t-closeness converts to eps = 2 ln t.
inline BoundCertificate t_to_eps(double t) {
  if (!(t >= 1)) fail(errc::bad_t, "t must be >= 1");
  BoundCertificate cert;
  cert.direction = BoundDirection::t_to_dp;
  cert.t = t;
  cert.epsilon = 2.0 * std::log(t);
  cert.formula_note = "t_to_dp: eps = 2 ln t";
  return cert;
}

}  // namespace tcdp
