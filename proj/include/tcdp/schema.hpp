#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcdp/csv.hpp"
#include "tcdp/error.hpp"

namespace tcdp {

enum class Role { quasi_identifier, confidential };
enum class Kind { numeric, ordinal, categorical };

inline std::string_view to_string(Role r) {
  return r == Role::quasi_identifier ? "quasi_identifier" : "confidential";
}
inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::numeric: return "numeric";
    case Kind::ordinal: return "ordinal";
    case Kind::categorical: return "categorical";
  }
  return "?";
}

struct Bounds {
  double lo = 0;
  double hi = 0;
  double width() const { return hi - lo; }
};

struct AttributeSchema {
  std::string name;
  Role role = Role::quasi_identifier;
  Kind kind = Kind::categorical;
  std::optional<Bounds> bounds;     // numeric columns only
  std::vector<std::string> order;   // ordinal columns: every admissible value, once

  // Position of an ordinal value inside `order`, or -1.
  int order_index(const std::string& value) const {
    auto it = std::find(order.begin(), order.end(), value);
    return it == order.end() ? -1 : static_cast<int>(it - order.begin());
  }
};

inline void validate_schema(const std::vector<AttributeSchema>& schema) {
  if (schema.empty()) fail(errc::schema_mismatch, "schema has no columns");
  std::set<std::string> names;
  for (const auto& col : schema) {
    if (col.name.empty()) fail(errc::schema_mismatch, "empty column name");
    if (!names.insert(col.name).second)
      fail(errc::schema_mismatch, "duplicate column name '" + col.name + "'");
    if (col.bounds && col.kind != Kind::numeric)
      fail(errc::schema_mismatch, "bounds on non-numeric column '" + col.name + "'");
    if (col.bounds && !(col.bounds->lo <= col.bounds->hi))
      fail(errc::schema_mismatch, "empty bounds interval on '" + col.name + "'");
    if (col.kind == Kind::ordinal) {
      if (col.order.empty())
        fail(errc::schema_mismatch, "ordinal column '" + col.name + "' lists no order");
      std::set<std::string> seen(col.order.begin(), col.order.end());
      if (seen.size() != col.order.size())
        fail(errc::schema_mismatch, "ordinal column '" + col.name + "' repeats a value in order");
    } else if (!col.order.empty()) {
      fail(errc::schema_mismatch, "order on non-ordinal column '" + col.name + "'");
    }
  }
}

namespace detail {

inline std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Sidecar schema format: line-oriented key=value blocks, one block per CSV
// column in column order. `column=` opens a block; recognized keys inside a
// block are role, kind, bounds (lo,hi) and order (comma-separated values).
// Blank lines and lines starting with '#' are ignored.
inline std::vector<AttributeSchema> parse_schema(std::string_view text) {
  std::vector<AttributeSchema> schema;
  std::vector<std::pair<bool, bool>> declared;  // per column: (role seen, kind seen)
  AttributeSchema* cur = nullptr;
  std::size_t line_no = 0;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::schema_mismatch, "schema line " + std::to_string(line_no) + ": expected key=value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key == "column") {
      schema.push_back(AttributeSchema{});
      declared.emplace_back(false, false);
      cur = &schema.back();
      cur->name = value;
      continue;
    }
    if (!cur)
      fail(errc::schema_mismatch, "schema line " + std::to_string(line_no) + ": '" + key +
                                      "' before any column=");
    if (key == "role") {
      if (value == "quasi_identifier") cur->role = Role::quasi_identifier;
      else if (value == "confidential") cur->role = Role::confidential;
      else fail(errc::schema_mismatch, "unknown role '" + value + "' for column " + cur->name);
      declared.back().first = true;
    } else if (key == "kind") {
      if (value == "numeric") cur->kind = Kind::numeric;
      else if (value == "ordinal") cur->kind = Kind::ordinal;
      else if (value == "categorical") cur->kind = Kind::categorical;
      else fail(errc::schema_mismatch, "unknown kind '" + value + "' for column " + cur->name);
      declared.back().second = true;
    } else if (key == "bounds") {
      auto parts = detail::split_csv_list(value);
      if (parts.size() != 2)
        fail(errc::schema_mismatch, "bounds for column " + cur->name + " need lo,hi");
      bool ok1 = false, ok2 = false;
      Bounds b;
      b.lo = csv::parse_double(detail::trim(parts[0]), ok1);
      b.hi = csv::parse_double(detail::trim(parts[1]), ok2);
      if (!ok1 || !ok2)
        fail(errc::schema_mismatch, "bounds for column " + cur->name + " are not numbers");
      cur->bounds = b;
    } else if (key == "order") {
      cur->order.clear();
      for (auto& v : detail::split_csv_list(value)) cur->order.push_back(detail::trim(v));
    } else {
      fail(errc::schema_mismatch, "unknown schema key '" + key + "'");
    }
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (!declared[i].first)
      fail(errc::schema_mismatch, "column '" + schema[i].name + "' declares no role");
    if (!declared[i].second)
      fail(errc::schema_mismatch, "column '" + schema[i].name + "' declares no kind");
  }
  validate_schema(schema);
  return schema;
}

inline std::vector<AttributeSchema> load_schema(const std::string& path) {
  return parse_schema(csv::read_file(path));
}

inline std::string format_schema(const std::vector<AttributeSchema>& schema) {
  std::string out;
  for (const auto& col : schema) {
    out += "column=" + col.name + "\n";
    out += "role=" + std::string(to_string(col.role)) + "\n";
    out += "kind=" + std::string(to_string(col.kind)) + "\n";
    if (col.bounds)
      out += "bounds=" + csv::format_double(col.bounds->lo) + "," +
             csv::format_double(col.bounds->hi) + "\n";
    if (!col.order.empty()) {
      out += "order=";
      for (std::size_t i = 0; i < col.order.size(); ++i) {
        if (i) out += ',';
        out += col.order[i];
      }
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

inline void save_schema(const std::vector<AttributeSchema>& schema, const std::string& path) {
  csv::write_file_atomic(path, format_schema(schema));
}

}  // namespace tcdp
