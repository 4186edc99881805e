#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tcdp/closeness.hpp"
#include "tcdp/dp_release.hpp"
#include "tcdp/error.hpp"
#include "tcdp/release.hpp"
#include "tcdp/synthetic.hpp"

namespace tcdp {

// One verified claim: the worst value a sweep observed against the bound it
// must stay under. Grid-based checks pass with 2% relative slack to absorb
// discretization; exact checks use the slack of the claim itself.
struct VerificationReport {
  std::string claim;
  std::size_t trials = 0;
  ExtendedDistance worst_observed;
  double bound = 0;
  double tolerance = 0;  // relative slack applied to the bound
  bool passed = false;
  double runtime_seconds = 0;  // informational; never serialized

  double margin() const {
    return worst_observed.is_infinite() ? -std::numeric_limits<double>::infinity()
                                        : bound - worst_observed.value();
  }
};

namespace detail {

constexpr double kGridTolerance = 0.02;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace detail

// End-to-end check of the conversion from differential privacy to stochastic
// closeness: run the DP pipeline on a synthetic table, measure the per-class
// density-ratio sup of the Laplace mixtures on a grid, and compare the worst
// class against the release's converted bound. Optionally also reports the
// per-record core inequality (any two in-bounds records' output densities
// within e^eps of each other at every grid point).
inline VerificationReport verify_dp_to_t(const SyntheticSpec& spec, double epsilon,
                                         std::size_t grid_resolution,
                                         VerificationReport* record_ratio_out = nullptr) {
  detail::Stopwatch clock;
  spec.validate();
  if (!(epsilon > 0)) fail(errc::bad_epsilon, "epsilon must be > 0");

  auto data = random_dataset(spec);
  std::size_t k = *std::min_element(spec.group_sizes.begin(), spec.group_sizes.end());
  auto release = anonymize_dp(data, k, epsilon, spec.seed);

  const double scale = release.mechanisms.front().mechanism.scale();
  StochasticMechanismSpec mech;
  mech.scale = scale;
  mech.column = "value";
  auto closeness = check_stochastic_t_closeness(data, mech, release.certificate.t, grid_resolution);

  VerificationReport report;
  report.claim = "dp-to-t-sup";
  report.trials = 1;
  report.worst_observed = closeness.achieved_t;
  report.bound = release.certificate.t;
  report.tolerance = detail::kGridTolerance;
  report.passed = closeness.achieved_t.at_most(report.bound * (1.0 + report.tolerance));

  if (record_ratio_out) {
    // Core inequality behind the bound, on sampled record pairs.
    std::vector<double> centers;
    for (std::size_t r = 0; r < data.size(); ++r)
      centers.push_back(data.numeric(r, data.column_index("value")));
    auto grid = laplace_grid(centers, scale, grid_resolution);

    const std::size_t n = centers.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t all_pairs = n * (n - 1) / 2;
    const std::size_t cap = 200;
    std::size_t stride = all_pairs <= cap ? 1 : all_pairs / cap;
    std::size_t counter = 0;
    for (std::size_t i = 0; i < n && pairs.size() < cap; ++i)
      for (std::size_t j = i + 1; j < n && pairs.size() < cap; ++j)
        if (counter++ % stride == 0) pairs.emplace_back(i, j);

    double worst = 1.0;
    for (auto [i, j] : pairs) {
      for (double x : grid) {
        double pi = laplace_pdf(x, centers[i], scale);
        double pj = laplace_pdf(x, centers[j], scale);
        double r = pi > pj ? pi / pj : pj / pi;
        if (r > worst) worst = r;
      }
    }
    VerificationReport ratio;
    ratio.claim = "dp-record-ratio";
    ratio.trials = pairs.size();
    ratio.worst_observed = ExtendedDistance(worst);
    ratio.bound = std::exp(epsilon);
    ratio.tolerance = 1e-12;
    ratio.passed = worst <= ratio.bound * (1.0 + ratio.tolerance);
    ratio.runtime_seconds = clock.seconds();
    *record_ratio_out = ratio;
    report.passed = report.passed && ratio.passed;
  }
  report.runtime_seconds = clock.seconds();
  return report;
}

// Repeated randomized runs of the bucketization construction: every release
// must satisfy its own certificate at the requested t.
inline VerificationReport verify_t_construction(std::size_t n, int t, int l, std::size_t trials,
                                                std::uint64_t seed) {
  detail::Stopwatch clock;
  VerificationReport report;
  report.claim = "construction-certified";
  report.trials = trials;
  report.bound = static_cast<double>(t);
  report.tolerance = 0;
  bool all_ok = true;
  ExtendedDistance worst;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SyntheticSpec spec;
    spec.n = n;
    // Three roughly equal incidental QI groups; the constructor re-partitions.
    spec.group_sizes = {n / 3, n / 3, n - 2 * (n / 3)};
    spec.shape = ConfShape::uniform;
    spec.value_range = {0, 1000};
    spec.seed = seed + trial;
    auto data = random_dataset(spec);
    auto release = anonymize_t_close(data, "value", static_cast<double>(t), l);
    if (!release.certificate.satisfied) all_ok = false;
    worst = ExtendedDistance::max(worst, release.certificate.achieved_t);
  }
  report.worst_observed = worst;
  report.passed = all_ok && worst.at_most(report.bound);
  report.runtime_seconds = clock.seconds();
  return report;
}

// The fixed sweep: every N x epsilon x class-layout combination, plus the
// construction property runs. Layouts: "equal" third/third/third, "skewed"
// sixth/third/half.
struct SweepConstructionCase {
  std::size_t n = 0;
  int t = 1;
  int l = 1;
  std::size_t trials = 0;
};

struct SweepConfig {
  std::uint64_t seed = 1;
  std::size_t grid_resolution = 10001;
  std::vector<std::size_t> n_values;
  std::vector<double> epsilons;
  std::vector<std::string> layouts;
  std::vector<SweepConstructionCase> construction;
};

inline std::vector<std::size_t> layout_group_sizes(const std::string& layout, std::size_t n) {
  if (layout == "equal") {
    if (n % 3 != 0) fail(errc::bad_spec, "equal layout needs N divisible by 3");
    return {n / 3, n / 3, n / 3};
  }
  if (layout == "skewed") {
    if (n % 6 != 0) fail(errc::bad_spec, "skewed layout needs N divisible by 6");
    return {n / 6, n / 3, n / 2};
  }
  fail(errc::bad_spec, "unknown layout '" + layout + "'");
}

inline std::vector<VerificationReport> run_sweep(const SweepConfig& config) {
  std::vector<VerificationReport> reports;
  std::uint64_t case_index = 0;
  for (auto n : config.n_values) {
    for (auto epsilon : config.epsilons) {
      for (const auto& layout : config.layouts) {
        SyntheticSpec spec;
        spec.n = n;
        spec.group_sizes = layout_group_sizes(layout, n);
        spec.shape = ConfShape::uniform;
        spec.value_range = {0, 1000};
        spec.seed = config.seed + (case_index++);
        VerificationReport ratio;
        auto report = verify_dp_to_t(spec, epsilon, config.grid_resolution, &ratio);
        auto tag = "/N=" + std::to_string(n) + "/eps=" + csv::format_double(epsilon) +
                   "/layout=" + layout;
        report.claim += tag;
        ratio.claim += tag;
        reports.push_back(report);
        reports.push_back(ratio);
      }
    }
  }
  for (const auto& c : config.construction) {
    auto report = verify_t_construction(c.n, c.t, c.l, c.trials, config.seed);
    report.claim += "/N=" + std::to_string(c.n) + "/t=" + std::to_string(c.t) +
                    "/l=" + std::to_string(c.l);
    reports.push_back(report);
  }
  return reports;
}

}  // namespace tcdp
