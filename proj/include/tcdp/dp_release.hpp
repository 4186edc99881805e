#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcdp/bounds.hpp"
#include "tcdp/closeness.hpp"
#include "tcdp/error.hpp"
#include "tcdp/laplace.hpp"
#include "tcdp/microdata.hpp"
#include "tcdp/partition.hpp"
#include "tcdp/release.hpp"

namespace tcdp {

struct ColumnMechanism {
  std::string column;
  LaplaceMechanism mechanism;
};

struct DpRelease {
  Microdata data;
  std::vector<RowProvenance> provenance;  // bucket stays -1, no bucketization here
  Partition partition;                    // the microaggregation classes
  std::vector<std::size_t> realized_class_sizes;  // classes of the released table
  std::vector<ColumnMechanism> mechanisms;
  BoundCertificate certificate;
  std::size_t k = 0;
  double epsilon = 0;
  std::uint64_t seed = 0;
};

// k-anonymity via microaggregation on the quasi-identifiers plus Laplace
// noise on every numeric confidential cell. The total budget splits equally
// across confidential columns (sequential composition); each column's
// sensitivity is its declared bounds width. The certificate converts the
// realized equivalence-class layout of the released table into the
// stochastic closeness bound it implies.
inline DpRelease anonymize_dp(const Microdata& data, std::size_t k, double epsilon,
                              std::uint64_t seed) {
  if (!(epsilon > 0)) fail(errc::bad_epsilon, "epsilon must be > 0");
  auto conf_cols = data.columns_with_role(Role::confidential);
  if (conf_cols.empty()) fail(errc::no_confidential, "dataset has no confidential columns");
  for (auto c : conf_cols) {
    if (data.schema[c].kind != Kind::numeric)
      fail(errc::missing_bounds,
           "confidential column '" + data.schema[c].name + "' is not numeric");
    if (!data.schema[c].bounds || !(data.schema[c].bounds->width() > 0))
      fail(errc::missing_bounds, "confidential column '" + data.schema[c].name +
                                     "' needs bounds with positive width");
  }

  DpRelease out;
  out.k = k;
  out.epsilon = epsilon;
  out.seed = seed;
  out.partition = kanon_microaggregate(data, k);

  const std::size_t n = data.size();
  out.data.schema = data.schema;
  auto qi_cols = data.columns_with_role(Role::quasi_identifier);
  for (auto c : qi_cols) out.data.schema[c] = detail::released_qi_schema(data.schema[c]);
  // Noised values can leave the declared interval; the released column is
  // unbounded.
  for (auto c : conf_cols) out.data.schema[c].bounds.reset();

  out.data.records = data.records;
  out.provenance.assign(n, RowProvenance{});
  for (const auto& cls : out.partition.classes) {
    std::vector<Cell> recoded;
    recoded.reserve(qi_cols.size());
    for (auto c : qi_cols) recoded.push_back(detail::recode_qi(data, cls.record_indices, c));
    for (auto r : cls.record_indices) {
      for (std::size_t j = 0; j < qi_cols.size(); ++j) out.data.records[r][qi_cols[j]] = recoded[j];
      out.provenance[r].class_id = cls.class_id;
    }
  }

  const double epsilon_per_column = epsilon / static_cast<double>(conf_cols.size());
  const std::size_t width = data.schema.size();
  for (auto c : conf_cols) {
    LaplaceMechanism mech;
    mech.epsilon = epsilon_per_column;
    mech.sensitivity = data.schema[c].bounds->width();
    mech.seed = seed;
    out.mechanisms.push_back({data.schema[c].name, mech});
    for (std::size_t r = 0; r < n; ++r) {
      // Draw index (row, column) keeps every cell reproducible regardless of
      // evaluation order.
      std::uint64_t draw = static_cast<std::uint64_t>(r) * width + c;
      out.data.records[r][c] = Cell{laplace_sample(mech, data.numeric(r, c), draw)};
    }
  }

  out.realized_class_sizes.clear();
  for (const auto& ec : equivalence_classes(out.data))
    out.realized_class_sizes.push_back(ec.size());
  out.certificate = dp_to_t_bound(n, out.realized_class_sizes, epsilon);
  return out;
}

// Pairwise-class verification backing the closeness-to-privacy conversion:
// with every class within t of the table, any two class distributions are
// within t of the global view (the enter/leave cases) and within t^2 of each
// other (the swap case, chaining through the global distribution).
struct PairDistance {
  int class_a = 0;
  int class_b = 0;
  ExtendedDistance distance;
};

struct Prop3Report {
  double t = 1;
  std::vector<ClassDistance> class_vs_global;
  ExtendedDistance max_class_vs_global;
  std::vector<PairDistance> pairwise;
  ExtendedDistance max_pairwise;
  double pairwise_bound = 1;  // t^2
  bool passed = false;
};

inline Prop3Report verify_prop3_cases(const Microdata& data, double t) {
  if (!(t >= 1)) fail(errc::bad_t, "t must be >= 1");
  std::vector<std::string> conf_names;
  for (auto c : data.columns_with_role(Role::confidential)) conf_names.push_back(data.schema[c].name);
  auto dists = confidential_distributions(data, conf_names);

  Prop3Report report;
  report.t = t;
  report.pairwise_bound = t * t;
  constexpr double kRelTol = 1e-9;

  for (const auto& [class_id, dist] : dists.per_class) {
    auto d = ratio_distance(dist, dists.global);
    if (!d.at_most(t * (1.0 + kRelTol)))
      fail(errc::not_t_close, "class " + std::to_string(class_id) + " is at distance " +
                                  d.to_string() + " from the table, beyond t = " +
                                  csv::format_double(t));
    report.class_vs_global.push_back({class_id, d});
    report.max_class_vs_global = ExtendedDistance::max(report.max_class_vs_global, d);
  }
  for (std::size_t a = 0; a < dists.per_class.size(); ++a) {
    for (std::size_t b = a + 1; b < dists.per_class.size(); ++b) {
      auto d = ratio_distance(dists.per_class[a].second, dists.per_class[b].second);
      report.pairwise.push_back({dists.per_class[a].first, dists.per_class[b].first, d});
      report.max_pairwise = ExtendedDistance::max(report.max_pairwise, d);
    }
  }
  report.passed = report.max_class_vs_global.at_most(t * (1.0 + kRelTol)) &&
                  report.max_pairwise.at_most(report.pairwise_bound * (1.0 + kRelTol));
  return report;
}

}  // namespace tcdp
