#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tcdp/csv.hpp"
#include "tcdp/error.hpp"
#include "tcdp/schema.hpp"

namespace tcdp {

// Numeric cells hold doubles, ordinal/categorical cells hold exact strings.
using Cell = std::variant<double, std::string>;

inline std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<double>(c)) return csv::format_double(std::get<double>(c));
  return std::get<std::string>(c);
}

inline bool cell_equal(const Cell& a, const Cell& b) { return a == b; }

// Immutable after load; safe for concurrent reads.
struct Microdata {
  std::vector<AttributeSchema> schema;
  std::vector<std::vector<Cell>> records;

  std::size_t size() const { return records.size(); }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (schema[i].name == name) return i;
    fail(errc::schema_mismatch, "no column named '" + name + "'");
  }

  std::vector<std::size_t> columns_with_role(Role role) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (schema[i].role == role) out.push_back(i);
    return out;
  }

  double numeric(std::size_t row, std::size_t col) const {
    return std::get<double>(records[row][col]);
  }
};

namespace detail {

inline Cell parse_cell(const std::string& raw, const AttributeSchema& col, std::size_t row,
                       std::size_t col_idx) {
  auto where = [&] {
    return " (row " + std::to_string(row + 1) + ", column '" + col.name + "' #" +
           std::to_string(col_idx + 1) + ")";
  };
  if (raw.empty())
    fail(errc::cell_violation, "missing value" + where());
  switch (col.kind) {
    case Kind::numeric: {
      bool ok = false;
      double v = csv::parse_double(raw, ok);
      if (!ok || !std::isfinite(v))
        fail(errc::cell_violation, "not a finite number: '" + raw + "'" + where());
      if (col.bounds && (v < col.bounds->lo || v > col.bounds->hi))
        fail(errc::cell_violation, "value " + raw + " outside bounds [" +
                                       csv::format_double(col.bounds->lo) + "," +
                                       csv::format_double(col.bounds->hi) + "]" + where());
      return Cell{v};
    }
    case Kind::ordinal:
      if (col.order_index(raw) < 0)
        fail(errc::cell_violation, "value '" + raw + "' not in declared order" + where());
      return Cell{raw};
    case Kind::categorical:
      return Cell{raw};
  }
  fail(errc::cell_violation, "unreachable");
}

}  // namespace detail

inline Microdata parse_dataset(std::string_view csv_text,
                               const std::vector<AttributeSchema>& schema) {
  validate_schema(schema);
  auto rows = csv::parse(csv_text);
  if (rows.empty()) fail(errc::schema_mismatch, "file has no header row");
  const auto& header = rows.front();
  if (header.size() != schema.size())
    fail(errc::schema_mismatch, "header has " + std::to_string(header.size()) +
                                    " columns, schema declares " + std::to_string(schema.size()));
  for (std::size_t j = 0; j < schema.size(); ++j)
    if (header[j] != schema[j].name)
      fail(errc::schema_mismatch,
           "header column " + std::to_string(j + 1) + " is '" + header[j] + "', schema says '" +
               schema[j].name + "'");
  if (rows.size() == 1) fail(errc::empty_dataset, "file has a header but no data rows");

  Microdata data;
  data.schema = schema;
  data.records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& raw = rows[r];
    if (raw.size() != schema.size())
      fail(errc::schema_mismatch, "row " + std::to_string(r) + " has " +
                                      std::to_string(raw.size()) + " columns, expected " +
                                      std::to_string(schema.size()));
    std::vector<Cell> cells;
    cells.reserve(schema.size());
    for (std::size_t j = 0; j < schema.size(); ++j)
      cells.push_back(detail::parse_cell(raw[j], schema[j], r - 1, j));
    data.records.push_back(std::move(cells));
  }
  return data;
}

inline Microdata load_dataset(const std::string& path, const std::vector<AttributeSchema>& schema) {
  return parse_dataset(csv::read_file(path), schema);
}

inline std::string format_dataset(const Microdata& data) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(data.records.size() + 1);
  std::vector<std::string> header;
  for (const auto& col : data.schema) header.push_back(col.name);
  rows.push_back(std::move(header));
  for (const auto& rec : data.records) {
    std::vector<std::string> row;
    row.reserve(rec.size());
    for (const auto& cell : rec) row.push_back(cell_to_string(cell));
    rows.push_back(std::move(row));
  }
  return csv::format(rows);
}

inline void save_dataset(const Microdata& data, const std::string& path) {
  csv::write_file_atomic(path, format_dataset(data));
}

// Maximal groups of records sharing the exact quasi-identifier tuple.
struct EquivalenceClass {
  int class_id = 0;
  std::vector<std::size_t> record_indices;
  std::vector<Cell> qi_signature;
  std::size_t size() const { return record_indices.size(); }
};

namespace detail {

// Deterministic ordering for signatures: numeric by value, ordinal by order
// position, categorical lexicographic.
inline int compare_cells(const Cell& a, const Cell& b, const AttributeSchema& col) {
  if (col.kind == Kind::numeric) {
    double x = std::get<double>(a), y = std::get<double>(b);
    if (x < y) return -1;
    if (x > y) return 1;
    return 0;
  }
  const auto& s = std::get<std::string>(a);
  const auto& t = std::get<std::string>(b);
  if (col.kind == Kind::ordinal) {
    int i = col.order_index(s), j = col.order_index(t);
    return i < j ? -1 : (i > j ? 1 : 0);
  }
  return s < t ? -1 : (s > t ? 1 : 0);
}

}  // namespace detail

inline std::vector<EquivalenceClass> equivalence_classes(const Microdata& data) {
  auto qi_cols = data.columns_with_role(Role::quasi_identifier);
  std::map<std::vector<Cell>, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < data.size(); ++r) {
    std::vector<Cell> sig;
    sig.reserve(qi_cols.size());
    for (auto c : qi_cols) sig.push_back(data.records[r][c]);
    groups[std::move(sig)].push_back(r);
  }
  std::vector<EquivalenceClass> classes;
  classes.reserve(groups.size());
  for (auto& [sig, indices] : groups) {
    EquivalenceClass ec;
    ec.qi_signature = sig;
    ec.record_indices = std::move(indices);
    classes.push_back(std::move(ec));
  }
  std::sort(classes.begin(), classes.end(),
            [&](const EquivalenceClass& a, const EquivalenceClass& b) {
              for (std::size_t j = 0; j < qi_cols.size(); ++j) {
                int c = detail::compare_cells(a.qi_signature[j], b.qi_signature[j],
                                              data.schema[qi_cols[j]]);
                if (c) return c < 0;
              }
              return false;
            });
  for (std::size_t i = 0; i < classes.size(); ++i) classes[i].class_id = static_cast<int>(i);
  return classes;
}

}  // namespace tcdp
