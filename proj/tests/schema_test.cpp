#include <doctest.h>

#include <tcdp/schema.hpp>

using namespace tcdp;

namespace {

const char* kSchemaText =
    "# demo schema\n"
    "column=Age\n"
    "role=quasi_identifier\n"
    "kind=numeric\n"
    "\n"
    "column=Grade\n"
    "role=confidential\n"
    "kind=ordinal\n"
    "order=low,mid,high\n"
    "\n"
    "column=Salary\n"
    "role=confidential\n"
    "kind=numeric\n"
    "bounds=0,100000\n";

}  // namespace

TEST_CASE("schema file parses roles, kinds, bounds and order") {
  auto schema = parse_schema(kSchemaText);
  REQUIRE(schema.size() == 3);
  CHECK(schema[0].name == "Age");
  CHECK(schema[0].role == Role::quasi_identifier);
  CHECK(schema[0].kind == Kind::numeric);
  CHECK(schema[1].order == std::vector<std::string>{"low", "mid", "high"});
  CHECK(schema[1].order_index("mid") == 1);
  REQUIRE(schema[2].bounds.has_value());
  CHECK(schema[2].bounds->lo == 0);
  CHECK(schema[2].bounds->hi == 100000);
}

TEST_CASE("schema rejects duplicate names and repeated order values") {
  CHECK_THROWS_AS(parse_schema("column=A\nrole=confidential\nkind=numeric\n"
                               "column=A\nrole=confidential\nkind=numeric\n"),
                  error);
  CHECK_THROWS_AS(parse_schema("column=A\nrole=confidential\nkind=ordinal\norder=x,x\n"), error);
}

TEST_CASE("schema rejects bounds on non-numeric columns") {
  CHECK_THROWS_AS(parse_schema("column=A\nrole=confidential\nkind=categorical\nbounds=0,1\n"),
                  error);
}

TEST_CASE("schema requires every column to declare role and kind") {
  CHECK_THROWS_AS(parse_schema("column=A\nkind=numeric\n"), error);
  CHECK_THROWS_AS(parse_schema("column=A\nrole=confidential\n"), error);
}

TEST_CASE("schema format parses back identically") {
  auto schema = parse_schema(kSchemaText);
  auto again = parse_schema(format_schema(schema));
  REQUIRE(again.size() == schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    CHECK(again[i].name == schema[i].name);
    CHECK(again[i].role == schema[i].role);
    CHECK(again[i].kind == schema[i].kind);
    CHECK(again[i].order == schema[i].order);
    CHECK(again[i].bounds.has_value() == schema[i].bounds.has_value());
  }
}
