#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcdp/error.hpp"

namespace tcdp {

// Probability mass over a finite label alphabet. Distributions built from
// observed values keep their integer counts; ratio computations use them to
// stay exact where floating-point division alone would drift.
struct DiscreteDistribution {
  std::vector<std::string> alphabet;
  std::vector<double> mass;
  std::vector<std::int64_t> counts;  // empty unless built empirically
  std::int64_t total = 0;

  bool has_counts() const { return !counts.empty(); }

  void validate() const {
    if (alphabet.size() != mass.size())
      fail(errc::alphabet_mismatch, "alphabet and mass lengths differ");
    if (!counts.empty() && counts.size() != alphabet.size())
      fail(errc::alphabet_mismatch, "alphabet and counts lengths differ");
    std::map<std::string, int> seen;
    double sum = 0;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (++seen[alphabet[i]] > 1)
        fail(errc::alphabet_mismatch, "duplicate label '" + alphabet[i] + "'");
      if (!(mass[i] >= 0)) fail(errc::alphabet_mismatch, "negative mass at '" + alphabet[i] + "'");
      sum += mass[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      fail(errc::alphabet_mismatch, "masses sum to " + std::to_string(sum) + ", not 1");
  }
};

inline DiscreteDistribution empirical_distribution(const std::vector<std::string>& values,
                                                   const std::vector<std::string>& alphabet) {
  if (values.empty()) fail(errc::empty_input, "no values to build a distribution from");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!index.emplace(alphabet[i], i).second)
      fail(errc::alphabet_mismatch, "duplicate label '" + alphabet[i] + "'");
  }
  DiscreteDistribution d;
  d.alphabet = alphabet;
  d.counts.assign(alphabet.size(), 0);
  for (const auto& v : values) {
    auto it = index.find(v);
    if (it == index.end()) fail(errc::unknown_label, "value '" + v + "' not in alphabet");
    ++d.counts[it->second];
  }
  d.total = static_cast<std::int64_t>(values.size());
  d.mass.resize(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    d.mass[i] = static_cast<double>(d.counts[i]) / static_cast<double>(d.total);
  return d;
}

}  // namespace tcdp
