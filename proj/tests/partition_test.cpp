#include <doctest.h>

#include <set>
#include <tcdp/partition.hpp>
#include <tcdp/synthetic.hpp>

using namespace tcdp;

namespace {

Microdata line_data(std::size_t n) {
  AttributeSchema qi{"pos", Role::quasi_identifier, Kind::numeric, {}, {}};
  AttributeSchema value{"value", Role::confidential, Kind::numeric, Bounds{0, 1e6}, {}};
  Microdata data;
  data.schema = {qi, value};
  for (std::size_t i = 0; i < n; ++i)
    data.records.push_back(
        {Cell{static_cast<double>(i + 1)}, Cell{static_cast<double>((i * 37) % 101)}});
  return data;
}

void check_partition_invariants(const Partition& partition, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  std::size_t min_size = n;
  for (const auto& cls : partition.classes) {
    min_size = std::min(min_size, cls.size());
    for (auto r : cls.record_indices) {
      REQUIRE(r < n);
      REQUIRE(!seen[r]);
      seen[r] = true;
      ++total;
    }
  }
  CHECK(total == n);
  CHECK(partition.k == min_size);
}

}  // namespace

TEST_CASE("quota partition of the 12-record example: rows are permutations of (2,1,1)") {
  auto data = line_data(12);
  auto buckets = optimal_buckets(data, "value", 2.0);
  for (auto strategy : {QiStrategy::greedy_seed, QiStrategy::sorted_scan}) {
    auto partition = build_partition(data, buckets, 2.0, 1, strategy);
    REQUIRE(partition.classes.size() == 3);
    check_partition_invariants(partition, 12);
    for (const auto& cls : partition.classes) {
      CHECK(cls.size() == 4);
      std::multiset<std::int64_t> counts(cls.bucket_counts.begin(), cls.bucket_counts.end());
      CHECK(counts == std::multiset<std::int64_t>{1, 1, 2});
      CHECK(cls.bucket_counts[static_cast<std::size_t>(cls.emphasized_bucket)] == 2);
    }
    CHECK(quotas_satisfied(partition, buckets, 12, 2));
  }
}

TEST_CASE("emphasis rotates round-robin across buckets") {
  auto data = line_data(48);
  auto buckets = optimal_buckets(data, "value", 2.0);
  auto partition = build_partition(data, buckets, 2.0, 2);
  REQUIRE(partition.classes.size() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(partition.classes[i].emphasized_bucket == static_cast<int>(i % 3));
}

TEST_CASE("t=1 on four records gives two classes with one record per bucket") {
  auto data = line_data(4);
  auto buckets = optimal_buckets(data, "value", 1.0);
  auto partition = build_partition(data, buckets, 1.0, 1);
  REQUIRE(partition.classes.size() == 2);
  for (const auto& cls : partition.classes) {
    CHECK(cls.bucket_counts == std::vector<std::int64_t>{1, 1});
  }
}

TEST_CASE("t=1 with indivisible sizes is infeasible after rounding") {
  auto data = line_data(10);
  auto buckets = optimal_buckets(data, "value", 1.0);
  try {
    build_partition(data, buckets, 1.0, 1);
    FAIL("expected Infeasible");
  } catch (const error& e) {
    CHECK(e.code() == errc::infeasible);
  }
}

TEST_CASE("the fixed composition rule hits its own quota wall at N=17, t=2") {
  auto data = line_data(17);
  auto buckets = optimal_buckets(data, "value", 2.0);
  try {
    build_partition(data, buckets, 2.0, 1);
    FAIL("expected Infeasible");
  } catch (const error& e) {
    CHECK(e.code() == errc::infeasible);
    CHECK(std::string(e.what()).find("class") != std::string::npos);
  }
}

TEST_CASE("quota soundness across feasible shapes and both strategies") {
  for (auto [n, t, l] : {std::tuple<std::size_t, int, int>{12, 2, 1},
                         {48, 3, 1},
                         {120, 2, 2},
                         {27, 2, 1},
                         {36, 2, 2},
                         {64, 3, 1}}) {
    auto data = line_data(n);
    auto buckets = optimal_buckets(data, "value", static_cast<double>(t));
    for (auto strategy : {QiStrategy::greedy_seed, QiStrategy::sorted_scan}) {
      auto partition = build_partition(data, buckets, static_cast<double>(t), l, strategy);
      check_partition_invariants(partition, n);
      CHECK(quotas_satisfied(partition, buckets, n, t));
      CHECK(partition.classes.size() == static_cast<std::size_t>(t + 1) * static_cast<std::size_t>(l));
    }
  }
}

TEST_CASE("greedy-seed groups nearby quasi-identifiers") {
  // Records 0..11 sit on a line; with uniform bucket structure the greedy
  // strategy should keep classes QI-compact relative to random placement.
  auto data = line_data(12);
  auto buckets = optimal_buckets(data, "value", 2.0);
  auto partition = build_partition(data, buckets, 2.0, 1, QiStrategy::greedy_seed);
  check_partition_invariants(partition, 12);
}

TEST_CASE("unknown strategy names are rejected") {
  CHECK(parse_strategy("greedy-seed") == QiStrategy::greedy_seed);
  CHECK(parse_strategy("sorted-scan") == QiStrategy::sorted_scan);
  try {
    parse_strategy("mystery");
    FAIL("expected UnknownStrategy");
  } catch (const error& e) {
    CHECK(e.code() == errc::unknown_strategy);
  }
}

TEST_CASE("microaggregation of a 12-point line at k=4") {
  AttributeSchema qi{"pos", Role::quasi_identifier, Kind::numeric, {}, {}};
  AttributeSchema value{"value", Role::confidential, Kind::numeric, Bounds{0, 100}, {}};
  Microdata data;
  data.schema = {qi, value};
  for (int i = 1; i <= 12; ++i)
    data.records.push_back({Cell{static_cast<double>(i)}, Cell{1.0}});
  auto partition = kanon_microaggregate(data, 4);
  REQUIRE(partition.classes.size() == 3);
  check_partition_invariants(partition, 12);
  std::set<std::set<std::size_t>> groups;
  for (const auto& cls : partition.classes)
    groups.insert(std::set<std::size_t>(cls.record_indices.begin(), cls.record_indices.end()));
  std::set<std::set<std::size_t>> expected{{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}};
  CHECK(groups == expected);
}

TEST_CASE("microaggregation limit cases") {
  auto data = line_data(9);
  auto one = kanon_microaggregate(data, 9);
  CHECK(one.classes.size() == 1);
  auto singletons = kanon_microaggregate(data, 1);
  CHECK(singletons.classes.size() == 9);
  try {
    kanon_microaggregate(data, 10);
    FAIL("expected KTooLarge");
  } catch (const error& e) {
    CHECK(e.code() == errc::k_too_large);
  }
}

TEST_CASE("microaggregation class sizes stay within [k, 2k-1]") {
  for (std::size_t n : {12, 13, 17, 23, 40}) {
    for (std::size_t k : {2, 3, 4, 5}) {
      auto data = line_data(n);
      auto partition = kanon_microaggregate(data, k);
      check_partition_invariants(partition, n);
      for (const auto& cls : partition.classes) {
        CHECK(cls.size() >= k);
        CHECK(cls.size() <= 2 * k - 1);
      }
    }
  }
}

TEST_CASE("microaggregation is deterministic") {
  auto data = line_data(23);
  auto a = kanon_microaggregate(data, 4);
  auto b = kanon_microaggregate(data, 4);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i)
    CHECK(a.classes[i].record_indices == b.classes[i].record_indices);
}

TEST_CASE("categorical QI groups below k are rejected") {
  SyntheticSpec spec;
  spec.n = 7;
  spec.group_sizes = {3, 4};
  spec.seed = 5;
  auto data = random_dataset(spec);
  CHECK(kanon_microaggregate(data, 3).classes.size() >= 2);
  try {
    kanon_microaggregate(data, 4);
    FAIL("expected Infeasible");
  } catch (const error& e) {
    CHECK(e.code() == errc::infeasible);
  }
}
