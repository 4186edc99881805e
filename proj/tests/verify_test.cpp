#include <doctest.h>

#include <cmath>
#include <tcdp/verify.hpp>

using namespace tcdp;

namespace {

SyntheticSpec spec_12_equal(std::uint64_t seed = 1) {
  SyntheticSpec spec;
  spec.n = 12;
  spec.group_sizes = {4, 4, 4};
  spec.value_range = {0, 1000};
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("the 12-record equal layout stays under 5/3 at eps = ln 2") {
  VerificationReport ratio;
  auto report = verify_dp_to_t(spec_12_equal(), std::log(2.0), 5001, &ratio);
  CHECK(report.passed);
  CHECK(std::abs(report.bound - 5.0 / 3.0) <= 1e-12);
  REQUIRE(!report.worst_observed.is_infinite());
  CHECK(report.worst_observed.value() <= report.bound);
  CHECK(report.margin() >= 0);
  CHECK(ratio.passed);
  CHECK(ratio.bound == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("a tiny epsilon keeps the worst distance within 1% of 1") {
  auto report = verify_dp_to_t(spec_12_equal(), 0.01, 5001);
  CHECK(report.passed);
  REQUIRE(!report.worst_observed.is_infinite());
  CHECK(report.worst_observed.value() <= 1.01);
  CHECK(report.worst_observed.value() >= 1.0);
}

TEST_CASE("one class covering the whole table gives worst = bound = 1") {
  SyntheticSpec spec;
  spec.n = 10;
  spec.group_sizes = {10};
  spec.seed = 3;
  auto report = verify_dp_to_t(spec, 1.0, 2001);
  CHECK(report.passed);
  CHECK(report.bound == 1.0);
  CHECK(report.worst_observed.value() == 1.0);
}

TEST_CASE("construction verification: all releases certify at their t") {
  auto report = verify_t_construction(48, 3, 1, 20, 99);
  CHECK(report.passed);
  CHECK(report.trials == 20);
  REQUIRE(!report.worst_observed.is_infinite());
  CHECK(report.worst_observed.value() <= 3.0);
}

TEST_CASE("construction at t=1 forces uniform classes with distance exactly 1") {
  auto report = verify_t_construction(16, 1, 1, 10, 5);
  CHECK(report.passed);
  CHECK(report.worst_observed.value() == 1.0);
}

TEST_CASE("layout helpers produce the documented shapes") {
  CHECK(layout_group_sizes("equal", 12) == std::vector<std::size_t>{4, 4, 4});
  CHECK(layout_group_sizes("skewed", 12) == std::vector<std::size_t>{2, 4, 6});
  CHECK(layout_group_sizes("skewed", 120) == std::vector<std::size_t>{20, 40, 60});
  CHECK_THROWS_AS(layout_group_sizes("other", 12), error);
}

TEST_CASE("a small sweep runs every combination and reports margins") {
  SweepConfig config;
  config.seed = 11;
  config.grid_resolution = 2001;
  config.n_values = {12};
  config.epsilons = {0.5, 1.0};
  config.layouts = {"equal", "skewed"};
  config.construction.push_back({12, 2, 1, 3});
  auto reports = run_sweep(config);
  REQUIRE(reports.size() == 2 * 2 * 2 + 1);
  for (const auto& report : reports) {
    CHECK(report.passed);
    CHECK(report.margin() >= 0);
  }
}
