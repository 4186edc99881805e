#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tcdp/error.hpp"
#include "tcdp/microdata.hpp"

namespace tcdp {

namespace detail {

// round-half-up of num/den on nonnegative integers
inline std::int64_t round_half_up(std::int64_t num, std::int64_t den) {
  return (2 * num + den) / (2 * den);
}

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return (num + den - 1) / den;
}

// The constructor works with whole bucket counts, so its t must be a whole
// number; the checker accepts any real t >= 1.
inline int require_integer_t(double t) {
  if (!(t >= 1)) fail(errc::bad_threshold, "t must be >= 1");
  if (std::floor(t) != t || t > 1e6) fail(errc::non_integer_t, "constructor t must be an integer");
  return static_cast<int>(t);
}

// Cumulative cut positions: cut i sits after position round(i*N/parts),
// round half up.
inline std::vector<std::size_t> cut_positions(std::size_t n, std::size_t parts) {
  std::vector<std::size_t> cuts(parts + 1);
  for (std::size_t i = 0; i <= parts; ++i)
    cuts[i] = static_cast<std::size_t>(
        round_half_up(static_cast<std::int64_t>(i) * static_cast<std::int64_t>(n),
                      static_cast<std::int64_t>(parts)));
  return cuts;
}

}  // namespace detail

struct Bucket {
  std::vector<std::size_t> records;
  std::string label;
};

// Grouping of confidential values into b buckets: contiguous runs in sorted
// value order for numeric/ordinal columns, frequency-balanced clusters of
// whole label groups for categorical ones.
struct Bucketization {
  std::string column;
  std::size_t b = 0;
  std::vector<Bucket> buckets;
  std::vector<std::size_t> sizes;
  std::vector<double> mass;
  std::vector<int> bucket_of;  // record index -> bucket index
  Kind kind = Kind::numeric;
};

namespace detail {

inline std::string bucket_label_numeric(std::size_t j, double lo, double hi) {
  return "B" + std::to_string(j + 1) + "[" + csv::format_double(lo) + ".." +
         csv::format_double(hi) + "]";
}

inline Bucketization finish_bucketization(Bucketization bkt, std::size_t n) {
  bkt.b = bkt.buckets.size();
  bkt.sizes.clear();
  bkt.mass.clear();
  bkt.bucket_of.assign(n, -1);
  for (std::size_t j = 0; j < bkt.buckets.size(); ++j) {
    bkt.sizes.push_back(bkt.buckets[j].records.size());
    bkt.mass.push_back(static_cast<double>(bkt.buckets[j].records.size()) /
                       static_cast<double>(n));
    for (auto r : bkt.buckets[j].records) bkt.bucket_of[r] = static_cast<int>(j);
  }
  return bkt;
}

}  // namespace detail

// t+1 buckets of near-equal size over the confidential column, cut after
// position round(i*N/(t+1)) in sorted value order. Needs N >= (t+1)^2 so a
// class of size k >= t+1 exists for every bucket.
inline Bucketization optimal_buckets(const Microdata& data, const std::string& conf_column,
                                     double t) {
  int ti = detail::require_integer_t(t);
  const std::size_t b = static_cast<std::size_t>(ti) + 1;
  const std::size_t n = data.size();
  if (n < b * b)
    fail(errc::too_small, "need N >= (t+1)^2 = " + std::to_string(b * b) + ", have N = " +
                              std::to_string(n));
  std::size_t col = data.column_index(conf_column);
  const auto& schema = data.schema[col];
  if (schema.role != Role::confidential)
    fail(errc::no_confidential, "column '" + conf_column + "' is not a confidential attribute");

  Bucketization bkt;
  bkt.column = conf_column;
  bkt.kind = schema.kind;

  if (schema.kind == Kind::categorical) {
    // Frequency-balanced greedy clustering of whole label groups: largest
    // group first into the currently smallest bucket.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < n; ++r) groups[std::get<std::string>(data.records[r][col])].push_back(r);
    if (groups.size() < b)
      fail(errc::too_small, "categorical column has " + std::to_string(groups.size()) +
                                " distinct values, need at least t+1 = " + std::to_string(b));
    std::vector<std::pair<std::string, std::vector<std::size_t>>> ordered(groups.begin(),
                                                                          groups.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b2) {
      return a.second.size() > b2.second.size();
    });
    std::vector<std::vector<std::string>> labels_in(b);
    bkt.buckets.resize(b);
    for (const auto& [label, recs] : ordered) {
      std::size_t target = 0;
      for (std::size_t j = 1; j < b; ++j)
        if (bkt.buckets[j].records.size() < bkt.buckets[target].records.size()) target = j;
      auto& dst = bkt.buckets[target].records;
      dst.insert(dst.end(), recs.begin(), recs.end());
      labels_in[target].push_back(label);
    }
    for (std::size_t j = 0; j < b; ++j) {
      std::sort(bkt.buckets[j].records.begin(), bkt.buckets[j].records.end());
      std::sort(labels_in[j].begin(), labels_in[j].end());
      std::string lbl = "B" + std::to_string(j + 1) + "{";
      for (std::size_t i = 0; i < labels_in[j].size(); ++i) {
        if (i) lbl += ',';
        lbl += labels_in[j][i];
      }
      lbl += "}";
      bkt.buckets[j].label = lbl;
    }
    return detail::finish_bucketization(std::move(bkt), n);
  }

  // Numeric / ordinal: sort record indices by value (ties by row), then cut.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (schema.kind == Kind::numeric) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
      return data.numeric(a, col) < data.numeric(b2, col);
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
      return schema.order_index(std::get<std::string>(data.records[a][col])) <
             schema.order_index(std::get<std::string>(data.records[b2][col]));
    });
  }
  auto cuts = detail::cut_positions(n, b);
  for (std::size_t j = 0; j < b; ++j) {
    Bucket bucket;
    for (std::size_t p = cuts[j]; p < cuts[j + 1]; ++p) bucket.records.push_back(order[p]);
    if (bucket.records.empty()) fail(errc::too_small, "empty bucket after cutting");
    if (schema.kind == Kind::numeric) {
      double lo = data.numeric(bucket.records.front(), col);
      double hi = lo;
      for (auto r : bucket.records) {
        lo = std::min(lo, data.numeric(r, col));
        hi = std::max(hi, data.numeric(r, col));
      }
      bucket.label = detail::bucket_label_numeric(j, lo, hi);
    } else {
      const auto& first = std::get<std::string>(data.records[order[cuts[j]]][col]);
      const auto& last = std::get<std::string>(data.records[order[cuts[j + 1] - 1]][col]);
      bucket.label = "B" + std::to_string(j + 1) + "[" + first +
                     (first == last ? "" : ".." + last) + "]";
    }
    bkt.buckets.push_back(std::move(bucket));
  }
  return detail::finish_bucketization(std::move(bkt), n);
}

// Class sizes e_i = round(i*N/((t+1)l)) - round((i-1)*N/((t+1)l)), summing
// to N with each size within 1 of N/((t+1)l).
inline std::vector<std::size_t> class_sizes(std::size_t n, int t, int l) {
  if (t < 1) fail(errc::bad_threshold, "t must be >= 1");
  std::size_t b = static_cast<std::size_t>(t) + 1;
  if (l < 1 || static_cast<std::size_t>(l) > n / (b * b))
    fail(errc::bad_l, "l must be in [1, floor(N/(t+1)^2)] = [1, " + std::to_string(n / (b * b)) +
                          "], got " + std::to_string(l));
  std::size_t parts = b * static_cast<std::size_t>(l);
  auto cuts = detail::cut_positions(n, parts);
  std::vector<std::size_t> sizes(parts);
  for (std::size_t i = 0; i < parts; ++i) sizes[i] = cuts[i + 1] - cuts[i];
  return sizes;
}

}  // namespace tcdp
