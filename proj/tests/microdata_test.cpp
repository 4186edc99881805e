#include <doctest.h>

#include <random>
#include <tcdp/microdata.hpp>

using namespace tcdp;

namespace {

std::vector<AttributeSchema> demo_schema() {
  AttributeSchema age{"Age", Role::quasi_identifier, Kind::numeric, {}, {}};
  AttributeSchema salary{"Salary", Role::confidential, Kind::numeric, Bounds{0, 1000}, {}};
  return {age, salary};
}

}  // namespace

TEST_CASE("load_dataset parses a 12-row table") {
  std::string text = "Age,Salary\n";
  for (int i = 0; i < 12; ++i)
    text += std::to_string(20 + i / 4) + "," + std::to_string(10 * (i + 1)) + "\n";
  auto data = parse_dataset(text, demo_schema());
  CHECK(data.size() == 12);
  CHECK(data.numeric(0, 1) == 10.0);
}

TEST_CASE("cells outside bounds are rejected with location info") {
  try {
    parse_dataset("Age,Salary\n30,2000\n", demo_schema());
    FAIL("expected CellViolation");
  } catch (const error& e) {
    CHECK(e.code() == errc::cell_violation);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    CHECK(std::string(e.what()).find("Salary") != std::string::npos);
  }
}

TEST_CASE("a header-only file is an empty dataset") {
  try {
    parse_dataset("Age,Salary\n", demo_schema());
    FAIL("expected EmptyDataset");
  } catch (const error& e) {
    CHECK(e.code() == errc::empty_dataset);
  }
}

TEST_CASE("header mismatches are schema errors") {
  CHECK_THROWS_AS(parse_dataset("Age,Wage\n30,10\n", demo_schema()), error);
  CHECK_THROWS_AS(parse_dataset("Age\n30\n", demo_schema()), error);
}

TEST_CASE("missing values are rejected") {
  CHECK_THROWS_AS(parse_dataset("Age,Salary\n30,\n", demo_schema()), error);
}

TEST_CASE("ordinal cells must come from the declared order") {
  AttributeSchema grade{"Grade", Role::confidential, Kind::ordinal, {}, {"low", "mid", "high"}};
  std::vector<AttributeSchema> schema{grade};
  CHECK(parse_dataset("Grade\nmid\n", schema).size() == 1);
  CHECK_THROWS_AS(parse_dataset("Grade\nhuge\n", schema), error);
}

TEST_CASE("equivalence classes partition the rows") {
  std::string text = "Age,Salary\n";
  for (int i = 0; i < 12; ++i) text += std::to_string(20 + i % 3) + "," + std::to_string(i) + "\n";
  auto data = parse_dataset(text, demo_schema());
  auto classes = equivalence_classes(data);
  REQUIRE(classes.size() == 3);
  std::vector<bool> seen(12, false);
  std::size_t total = 0;
  for (const auto& ec : classes) {
    CHECK(ec.size() == 4);
    for (auto r : ec.record_indices) {
      CHECK(!seen[r]);
      seen[r] = true;
      ++total;
    }
  }
  CHECK(total == 12);
  // sorted by signature: ages 20 < 21 < 22
  CHECK(std::get<double>(classes[0].qi_signature[0]) == 20.0);
  CHECK(std::get<double>(classes[2].qi_signature[0]) == 22.0);
}

TEST_CASE("single shared QI tuple gives one class, distinct tuples give singletons") {
  auto one = parse_dataset("Age,Salary\n30,1\n30,2\n30,3\n", demo_schema());
  CHECK(equivalence_classes(one).size() == 1);
  auto many = parse_dataset("Age,Salary\n30,1\n31,2\n32,3\n", demo_schema());
  CHECK(equivalence_classes(many).size() == 3);
}

TEST_CASE("serialize then reload is cell-identical") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> value(0, 1000);
  AttributeSchema city{"City", Role::quasi_identifier, Kind::categorical, {}, {}};
  AttributeSchema salary{"Salary", Role::confidential, Kind::numeric, Bounds{0, 1000}, {}};
  std::vector<AttributeSchema> schema{city, salary};
  const std::vector<std::string> cities{"x", "with,comma", "with \"quotes\"", "multi\nline"};
  Microdata data;
  data.schema = schema;
  for (int i = 0; i < 50; ++i)
    data.records.push_back({Cell{cities[static_cast<std::size_t>(i) % cities.size()]},
                            Cell{value(gen)}});
  auto reloaded = parse_dataset(format_dataset(data), schema);
  REQUIRE(reloaded.size() == data.size());
  for (std::size_t r = 0; r < data.size(); ++r) CHECK(reloaded.records[r] == data.records[r]);
}
