#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tcdp/bucketize.hpp"
#include "tcdp/closeness.hpp"
#include "tcdp/error.hpp"
#include "tcdp/microdata.hpp"
#include "tcdp/partition.hpp"

namespace tcdp {

namespace detail {

// Class-level quasi-identifier recoding: numeric -> class mean, ordinal ->
// range label over the declared order, categorical -> sorted value-set
// label. Returns the recoded cell for one class and column.
inline Cell recode_qi(const Microdata& data, const std::vector<std::size_t>& members,
                      std::size_t col) {
  const auto& schema = data.schema[col];
  if (schema.kind == Kind::numeric) {
    double sum = 0;
    for (auto r : members) sum += data.numeric(r, col);
    return Cell{sum / static_cast<double>(members.size())};
  }
  if (schema.kind == Kind::ordinal) {
    int lo = static_cast<int>(schema.order.size()), hi = -1;
    for (auto r : members) {
      int idx = schema.order_index(std::get<std::string>(data.records[r][col]));
      lo = std::min(lo, idx);
      hi = std::max(hi, idx);
    }
    if (lo == hi) return Cell{schema.order[static_cast<std::size_t>(lo)]};
    return Cell{schema.order[static_cast<std::size_t>(lo)] + ".." +
                schema.order[static_cast<std::size_t>(hi)]};
  }
  std::set<std::string> values;
  for (auto r : members) values.insert(std::get<std::string>(data.records[r][col]));
  if (values.size() == 1) return Cell{*values.begin()};
  std::string label = "{";
  for (auto it = values.begin(); it != values.end(); ++it) {
    if (it != values.begin()) label += ',';
    label += *it;
  }
  label += "}";
  return Cell{label};
}

// Schema of a recoded table: ordinal/categorical QI columns become plain
// categorical (range/set labels are not values of the original domain).
inline AttributeSchema released_qi_schema(const AttributeSchema& original) {
  AttributeSchema out = original;
  if (out.kind != Kind::numeric) {
    out.kind = Kind::categorical;
    out.order.clear();
  }
  return out;
}

}  // namespace detail

// Row-level origin of every released cell: which class a row landed in and,
// for bucketized releases, which bucket its confidential value fell into.
struct RowProvenance {
  int class_id = -1;
  int bucket = -1;
};

struct AnonymizedDataset {
  Microdata data;
  std::vector<RowProvenance> provenance;
  Bucketization buckets;
  Partition partition;
  ClosenessReport certificate;
  double t = 1;
  int l = 1;
  QiStrategy strategy = QiStrategy::greedy_seed;
};

// The bucketization construction end to end: cluster the confidential column
// into t+1 buckets, build the quota partition, recode quasi-identifiers per
// class and replace confidential values by bucket labels. The returned
// release always carries a satisfied closeness certificate.
inline AnonymizedDataset anonymize_t_close(const Microdata& data, const std::string& conf_column,
                                           double t, int l,
                                           QiStrategy strategy = QiStrategy::greedy_seed) {
  int ti = detail::require_integer_t(t);
  AnonymizedDataset out;
  out.t = t;
  out.l = l;
  out.strategy = strategy;
  out.buckets = optimal_buckets(data, conf_column, t);
  out.partition = build_partition(data, out.buckets, t, l, strategy);

  const std::size_t n = data.size();
  const std::size_t conf_col = data.column_index(conf_column);

  out.data.schema.reserve(data.schema.size());
  for (std::size_t c = 0; c < data.schema.size(); ++c) {
    if (c == conf_col) {
      AttributeSchema col = data.schema[c];
      col.kind = Kind::categorical;
      col.bounds.reset();
      col.order.clear();
      out.data.schema.push_back(std::move(col));
    } else if (data.schema[c].role == Role::quasi_identifier) {
      out.data.schema.push_back(detail::released_qi_schema(data.schema[c]));
    } else {
      out.data.schema.push_back(data.schema[c]);
    }
  }

  out.data.records = data.records;
  out.provenance.assign(n, RowProvenance{});
  auto qi_cols = data.columns_with_role(Role::quasi_identifier);
  for (const auto& cls : out.partition.classes) {
    std::vector<Cell> recoded;
    recoded.reserve(qi_cols.size());
    for (auto c : qi_cols) recoded.push_back(detail::recode_qi(data, cls.record_indices, c));
    for (auto r : cls.record_indices) {
      for (std::size_t j = 0; j < qi_cols.size(); ++j) out.data.records[r][qi_cols[j]] = recoded[j];
      out.provenance[r].class_id = cls.class_id;
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    int bucket = out.buckets.bucket_of[r];
    out.provenance[r].bucket = bucket;
    out.data.records[r][conf_col] = Cell{out.buckets.buckets[static_cast<std::size_t>(bucket)].label};
  }

  out.certificate = check_t_closeness(out.data, {conf_column}, static_cast<double>(ti));
  if (!out.certificate.satisfied)
    fail(errc::infeasible, "constructed release misses its own certificate check");
  return out;
}

}  // namespace tcdp
