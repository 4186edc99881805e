#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tcdp/bucketize.hpp"
#include "tcdp/distance.hpp"
#include "tcdp/error.hpp"
#include "tcdp/microdata.hpp"

namespace tcdp {

struct PartitionClass {
  int class_id = 0;
  std::vector<std::size_t> record_indices;
  int emphasized_bucket = -1;                // -1 when not quota-built
  std::vector<std::int64_t> bucket_counts;   // empty when not quota-built
  std::size_t size() const { return record_indices.size(); }
};

struct Partition {
  std::vector<PartitionClass> classes;
  std::vector<std::size_t> e_sizes;
  int l = 0;       // 0 when the partition does not come from the quota builder
  std::size_t k = 0;
};

// How records are picked to fill each class's per-bucket quota.
enum class QiStrategy { greedy_seed, sorted_scan };

inline QiStrategy parse_strategy(const std::string& name) {
  if (name == "greedy-seed") return QiStrategy::greedy_seed;
  if (name == "sorted-scan") return QiStrategy::sorted_scan;
  fail(errc::unknown_strategy, "unknown strategy '" + name + "' (greedy-seed, sorted-scan)");
}

inline std::string_view to_string(QiStrategy s) {
  return s == QiStrategy::greedy_seed ? "greedy-seed" : "sorted-scan";
}

namespace detail {

// Numeric view of the quasi-identifier space: standardized values for
// numeric/ordinal columns; categorical columns kept for mismatch distance.
struct QiSpace {
  std::vector<std::vector<double>> numeric;       // row -> standardized numeric features
  std::vector<std::vector<std::string>> symbols;  // row -> categorical values
  std::vector<std::size_t> qi_cols;
  const Microdata* data = nullptr;

  double distance2(std::size_t a, std::size_t b) const {
    double acc = 0;
    for (std::size_t f = 0; f < numeric[a].size(); ++f) {
      double d = numeric[a][f] - numeric[b][f];
      acc += d * d;
    }
    for (std::size_t f = 0; f < symbols[a].size(); ++f)
      if (symbols[a][f] != symbols[b][f]) acc += 1.0;
    return acc;
  }

  double distance2_to(std::size_t a, const std::vector<double>& center) const {
    double acc = 0;
    for (std::size_t f = 0; f < numeric[a].size(); ++f) {
      double d = numeric[a][f] - center[f];
      acc += d * d;
    }
    return acc;
  }

  // Lexicographic over QI columns (numeric by value, ordinal by position,
  // categorical by text), then row index.
  bool key_less(std::size_t a, std::size_t b) const {
    for (auto c : qi_cols) {
      int cmp = compare_cells(data->records[a][c], data->records[b][c], data->schema[c]);
      if (cmp) return cmp < 0;
    }
    return a < b;
  }
};

inline QiSpace make_qi_space(const Microdata& data) {
  QiSpace space;
  space.data = &data;
  space.qi_cols = data.columns_with_role(Role::quasi_identifier);
  const std::size_t n = data.size();
  space.numeric.assign(n, {});
  space.symbols.assign(n, {});
  for (auto c : space.qi_cols) {
    const auto& col = data.schema[c];
    if (col.kind == Kind::categorical) {
      for (std::size_t r = 0; r < n; ++r)
        space.symbols[r].push_back(std::get<std::string>(data.records[r][c]));
      continue;
    }
    std::vector<double> vals(n);
    for (std::size_t r = 0; r < n; ++r)
      vals[r] = col.kind == Kind::numeric
                    ? data.numeric(r, c)
                    : static_cast<double>(col.order_index(std::get<std::string>(data.records[r][c])));
    double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(n);
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t r = 0; r < n; ++r)
      space.numeric[r].push_back(sd > 0 ? (vals[r] - mean) / sd : 0.0);
  }
  return space;
}

}  // namespace detail

// Re-derivable quota bounds for one class and bucket: a class of size e may
// hold between ceil(e*b_j/(N*t)) and floor(e*b_j*t/N) records of bucket j,
// which is exactly per-bucket t-closeness after integer rounding.
struct QuotaBounds {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

inline QuotaBounds quota_bounds(std::size_t class_size, std::size_t bucket_size, std::size_t n,
                                int t) {
  auto e = static_cast<std::int64_t>(class_size);
  auto bj = static_cast<std::int64_t>(bucket_size);
  auto nn = static_cast<std::int64_t>(n);
  QuotaBounds q;
  q.lo = detail::ceil_div(e * bj, nn * t);
  q.hi = (e * bj * t) / nn;
  return q;
}

// Independent re-check of a quota-built partition against its bucketization.
inline bool quotas_satisfied(const Partition& partition, const Bucketization& buckets,
                             std::size_t n, int t) {
  for (const auto& cls : partition.classes) {
    std::vector<std::int64_t> counts(buckets.b, 0);
    for (auto r : cls.record_indices) ++counts[static_cast<std::size_t>(buckets.bucket_of[r])];
    for (std::size_t j = 0; j < buckets.b; ++j) {
      auto q = quota_bounds(cls.size(), buckets.sizes[j], n, t);
      if (counts[j] < q.lo || counts[j] > q.hi) return false;
    }
  }
  return true;
}

// The quota-driven partition: (t+1)*l classes, class i emphasizing bucket
// ((i-1) mod (t+1)) + 1, taking ceil(e_i*p_j/t) records from every other
// bucket and the remainder from the emphasized one. Whenever rounding makes
// those counts violate their own bounds, or per-bucket demand does not match
// bucket supply, the input is rejected as Infeasible.
inline Partition build_partition(const Microdata& data, const Bucketization& buckets, double t,
                                 int l, QiStrategy strategy = QiStrategy::greedy_seed) {
  int ti = detail::require_integer_t(t);
  const std::size_t n = data.size();
  const std::size_t b = buckets.b;
  std::size_t bucketed = 0;
  for (auto s : buckets.sizes) bucketed += s;
  if (bucketed != n || buckets.bucket_of.size() != n)
    fail(errc::sizes_mismatch, "bucketization covers " + std::to_string(bucketed) +
                                   " records, dataset has " + std::to_string(n));
  auto e_sizes = class_sizes(n, ti, l);
  const std::size_t class_count = e_sizes.size();

  for (std::size_t j = 0; j < b; ++j)
    if (buckets.sizes[j] < class_count)
      fail(errc::infeasible, "bucket " + std::to_string(j + 1) + " holds " +
                                 std::to_string(buckets.sizes[j]) + " records, fewer than the " +
                                 std::to_string(class_count) + " classes");

  // Quota matrix, checked against the two-sided bounds.
  std::vector<std::vector<std::int64_t>> want(class_count, std::vector<std::int64_t>(b, 0));
  for (std::size_t i = 0; i < class_count; ++i) {
    const std::size_t emph = i % b;
    auto e = static_cast<std::int64_t>(e_sizes[i]);
    std::int64_t taken = 0;
    for (std::size_t j = 0; j < b; ++j) {
      if (j == emph) continue;
      want[i][j] = quota_bounds(e_sizes[i], buckets.sizes[j], n, ti).lo;
      taken += want[i][j];
    }
    want[i][emph] = e - taken;
    for (std::size_t j = 0; j < b; ++j) {
      auto q = quota_bounds(e_sizes[i], buckets.sizes[j], n, ti);
      if (want[i][j] < q.lo || want[i][j] > q.hi)
        fail(errc::infeasible, "class " + std::to_string(i + 1) + ", bucket " +
                                   std::to_string(j + 1) + ": quota " + std::to_string(want[i][j]) +
                                   " outside [" + std::to_string(q.lo) + "," +
                                   std::to_string(q.hi) + "]");
    }
  }
  for (std::size_t j = 0; j < b; ++j) {
    std::int64_t demand = 0;
    for (std::size_t i = 0; i < class_count; ++i) demand += want[i][j];
    if (demand != static_cast<std::int64_t>(buckets.sizes[j]))
      fail(errc::infeasible, "bucket " + std::to_string(j + 1) + ": quota demand " +
                                 std::to_string(demand) + " != bucket size " +
                                 std::to_string(buckets.sizes[j]));
  }

  auto space = detail::make_qi_space(data);
  Partition partition;
  partition.e_sizes = e_sizes;
  partition.l = l;
  partition.k = *std::min_element(e_sizes.begin(), e_sizes.end());

  std::vector<char> assigned(n, 0);
  if (strategy == QiStrategy::sorted_scan) {
    // Records inside each bucket ordered by QI key; classes consume in turn.
    std::vector<std::vector<std::size_t>> pool(b);
    std::vector<std::size_t> cursor(b, 0);
    for (std::size_t j = 0; j < b; ++j) {
      pool[j] = buckets.buckets[j].records;
      std::sort(pool[j].begin(), pool[j].end(),
                [&](std::size_t a, std::size_t c) { return space.key_less(a, c); });
    }
    for (std::size_t i = 0; i < class_count; ++i) {
      PartitionClass cls;
      cls.class_id = static_cast<int>(i);
      cls.emphasized_bucket = static_cast<int>(i % b);
      cls.bucket_counts.assign(b, 0);
      for (std::size_t j = 0; j < b; ++j) {
        for (std::int64_t c = 0; c < want[i][j]; ++c) {
          std::size_t rec = pool[j][cursor[j]++];
          cls.record_indices.push_back(rec);
          ++cls.bucket_counts[j];
        }
      }
      std::sort(cls.record_indices.begin(), cls.record_indices.end());
      partition.classes.push_back(std::move(cls));
    }
  } else if (strategy == QiStrategy::greedy_seed) {
    // Each class claims the first unassigned record in QI order as its seed,
    // then pulls the quota from each bucket nearest to that seed.
    std::vector<std::size_t> qi_order(n);
    std::iota(qi_order.begin(), qi_order.end(), 0);
    std::sort(qi_order.begin(), qi_order.end(),
              [&](std::size_t a, std::size_t c) { return space.key_less(a, c); });
    for (std::size_t i = 0; i < class_count; ++i) {
      std::size_t seed = n;
      for (auto r : qi_order)
        if (!assigned[r]) {
          seed = r;
          break;
        }
      PartitionClass cls;
      cls.class_id = static_cast<int>(i);
      cls.emphasized_bucket = static_cast<int>(i % b);
      cls.bucket_counts.assign(b, 0);
      for (std::size_t j = 0; j < b; ++j) {
        std::vector<std::size_t> candidates;
        for (auto r : buckets.buckets[j].records)
          if (!assigned[r]) candidates.push_back(r);
        std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t c) {
          double da = space.distance2(a, seed), dc = space.distance2(c, seed);
          if (da != dc) return da < dc;
          return a < c;
        });
        for (std::int64_t c = 0; c < want[i][j]; ++c) {
          std::size_t rec = candidates[static_cast<std::size_t>(c)];
          assigned[rec] = 1;
          cls.record_indices.push_back(rec);
          ++cls.bucket_counts[j];
        }
      }
      std::sort(cls.record_indices.begin(), cls.record_indices.end());
      partition.classes.push_back(std::move(cls));
    }
  } else {
    fail(errc::unknown_strategy, "unhandled strategy");
  }

  if (!quotas_satisfied(partition, buckets, n, ti))
    fail(errc::infeasible, "assignment violates quota bounds");

  // Closeness of every class's bucket distribution, re-checked from counts.
  std::vector<std::string> alphabet;
  for (const auto& bk : buckets.buckets) alphabet.push_back(bk.label);
  DiscreteDistribution global;
  global.alphabet = alphabet;
  global.total = static_cast<std::int64_t>(n);
  for (auto s : buckets.sizes) {
    global.counts.push_back(static_cast<std::int64_t>(s));
    global.mass.push_back(static_cast<double>(s) / static_cast<double>(n));
  }
  for (const auto& cls : partition.classes) {
    DiscreteDistribution d;
    d.alphabet = alphabet;
    d.total = static_cast<std::int64_t>(cls.size());
    for (auto c : cls.bucket_counts) {
      d.counts.push_back(c);
      d.mass.push_back(static_cast<double>(c) / static_cast<double>(cls.size()));
    }
    if (!ratio_distance(d, global).at_most(static_cast<double>(ti)))
      fail(errc::infeasible,
           "class " + std::to_string(cls.class_id + 1) + " misses t-closeness after assignment");
  }
  return partition;
}

// Fixed-size maximum-distance-to-average microaggregation over standardized
// QI features. Categorical quasi-identifiers are grouped by exact match
// first; the heuristic then runs inside each group, so every class is pure
// in its categorical QI values.
inline Partition kanon_microaggregate(const Microdata& data, std::size_t k) {
  const std::size_t n = data.size();
  if (k < 1) fail(errc::bad_spec, "k must be >= 1");
  if (k > n) fail(errc::k_too_large, "k = " + std::to_string(k) + " exceeds N = " + std::to_string(n));

  auto space = detail::make_qi_space(data);

  // Exact-match groups over categorical QI values, deterministic order.
  std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < n; ++r) groups[space.symbols[r]].push_back(r);
  for (const auto& [sig, members] : groups) {
    if (members.size() < k) {
      std::string label;
      for (const auto& s : sig) label += (label.empty() ? "" : ",") + s;
      fail(errc::infeasible, "categorical QI group {" + label + "} has " +
                                 std::to_string(members.size()) + " records, fewer than k = " +
                                 std::to_string(k));
    }
  }

  const std::size_t features = space.numeric.empty() ? 0 : space.numeric[0].size();
  Partition partition;
  partition.l = 0;

  auto centroid_of = [&](const std::vector<std::size_t>& rows) {
    std::vector<double> c(features, 0.0);
    for (auto r : rows)
      for (std::size_t f = 0; f < features; ++f) c[f] += space.numeric[r][f];
    for (auto& v : c) v /= static_cast<double>(rows.size());
    return c;
  };
  auto farthest_from_center = [&](const std::vector<std::size_t>& rows,
                                  const std::vector<double>& center) {
    std::size_t best = rows[0];
    double best_d = -1;
    for (auto r : rows) {
      double d = space.distance2_to(r, center);
      if (d > best_d) {
        best_d = d;
        best = r;
      }
    }
    return best;
  };
  auto take_class_around = [&](std::vector<std::size_t>& rows, std::size_t anchor) {
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t c) {
      double da = a == anchor ? -1 : space.distance2(a, anchor);
      double dc = c == anchor ? -1 : space.distance2(c, anchor);
      if (da != dc) return da < dc;
      return a < c;
    });
    std::vector<std::size_t> cls(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k));
    rows.erase(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(cls.begin(), cls.end());
    return cls;
  };
  auto emit = [&](std::vector<std::size_t> rows) {
    PartitionClass cls;
    cls.class_id = static_cast<int>(partition.classes.size());
    cls.record_indices = std::move(rows);
    partition.classes.push_back(std::move(cls));
  };

  for (auto& [sig, members] : groups) {
    std::vector<std::size_t> remaining = members;
    while (remaining.size() >= 3 * k) {
      auto center = centroid_of(remaining);
      auto r = farthest_from_center(remaining, center);
      emit(take_class_around(remaining, r));
      std::size_t s = remaining[0];
      double best_d = -1;
      for (auto x : remaining) {
        double d = space.distance2(x, r);
        if (d > best_d) {
          best_d = d;
          s = x;
        }
      }
      emit(take_class_around(remaining, s));
    }
    if (remaining.size() >= 2 * k) {
      auto center = centroid_of(remaining);
      auto r = farthest_from_center(remaining, center);
      emit(take_class_around(remaining, r));
    }
    if (!remaining.empty()) {
      std::sort(remaining.begin(), remaining.end());
      emit(std::move(remaining));
    }
  }

  partition.k = n;
  for (const auto& cls : partition.classes) {
    partition.e_sizes.push_back(cls.size());
    partition.k = std::min(partition.k, cls.size());
  }
  return partition;
}

}  // namespace tcdp
