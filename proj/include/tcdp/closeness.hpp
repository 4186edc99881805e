#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tcdp/distance.hpp"
#include "tcdp/distribution.hpp"
#include "tcdp/error.hpp"
#include "tcdp/laplace.hpp"
#include "tcdp/microdata.hpp"

namespace tcdp {

struct ClassDistance {
  int class_id = 0;
  ExtendedDistance distance;
};

struct ClosenessReport {
  double target_t = 1;
  std::vector<ClassDistance> per_class;
  ExtendedDistance achieved_t;
  bool satisfied = false;
};

namespace detail {

// Injective encoding of a confidential value tuple into one alphabet label.
// Single-column tuples stay as the raw value text so reports read naturally.
inline std::string joint_label(const std::vector<std::string>& parts) {
  if (parts.size() == 1) return parts[0];
  std::string out;
  for (const auto& p : parts) {
    out += std::to_string(p.size());
    out += ':';
    out += p;
  }
  return out;
}

inline std::vector<std::size_t> resolve_confidential(const Microdata& data,
                                                     const std::vector<std::string>& names) {
  if (names.empty()) fail(errc::no_confidential, "no confidential columns selected");
  std::vector<std::size_t> cols;
  for (const auto& name : names) {
    std::size_t idx = data.column_index(name);
    if (data.schema[idx].role != Role::confidential)
      fail(errc::no_confidential, "column '" + name + "' is not a confidential attribute");
    cols.push_back(idx);
  }
  return cols;
}

inline std::vector<std::string> record_labels(const Microdata& data,
                                              const std::vector<std::size_t>& cols) {
  std::vector<std::string> labels;
  labels.reserve(data.size());
  std::vector<std::string> parts(cols.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) parts[j] = cell_to_string(data.records[r][cols[j]]);
    labels.push_back(joint_label(parts));
  }
  return labels;
}

}  // namespace detail

// The table-level and per-class empirical distributions of a confidential
// tuple, over the alphabet of values present anywhere in the table.
struct ClassDistributions {
  DiscreteDistribution global;
  std::vector<std::pair<int, DiscreteDistribution>> per_class;
};

inline ClassDistributions confidential_distributions(const Microdata& data,
                                                     const std::vector<std::string>& conf_columns) {
  auto cols = detail::resolve_confidential(data, conf_columns);
  auto labels = detail::record_labels(data, cols);
  std::set<std::string> distinct(labels.begin(), labels.end());
  std::vector<std::string> alphabet(distinct.begin(), distinct.end());

  ClassDistributions out;
  out.global = empirical_distribution(labels, alphabet);
  for (const auto& ec : equivalence_classes(data)) {
    std::vector<std::string> class_labels;
    class_labels.reserve(ec.size());
    for (auto r : ec.record_indices) class_labels.push_back(labels[r]);
    out.per_class.emplace_back(ec.class_id, empirical_distribution(class_labels, alphabet));
  }
  return out;
}

inline ClosenessReport check_t_closeness(const Microdata& data,
                                         const std::vector<std::string>& conf_columns,
                                         double target_t) {
  if (!(target_t >= 1)) fail(errc::bad_threshold, "t must be >= 1");
  auto dists = confidential_distributions(data, conf_columns);
  ClosenessReport report;
  report.target_t = target_t;
  for (const auto& [class_id, dist] : dists.per_class) {
    auto d = ratio_distance(dist, dists.global);
    report.per_class.push_back({class_id, d});
    report.achieved_t = ExtendedDistance::max(report.achieved_t, d);
  }
  report.satisfied = report.achieved_t.at_most(target_t);
  return report;
}

// All confidential columns, joint treatment.
inline ClosenessReport check_t_closeness(const Microdata& data, double target_t) {
  std::vector<std::string> names;
  for (auto c : data.columns_with_role(Role::confidential)) names.push_back(data.schema[c].name);
  return check_t_closeness(data, names, target_t);
}

// Weaker per-attribute mode: one report per confidential column.
inline std::vector<std::pair<std::string, ClosenessReport>> check_t_closeness_per_attribute(
    const Microdata& data, const std::vector<std::string>& conf_columns, double target_t) {
  if (conf_columns.empty()) fail(errc::no_confidential, "no confidential columns selected");
  std::vector<std::pair<std::string, ClosenessReport>> out;
  for (const auto& name : conf_columns)
    out.emplace_back(name, check_t_closeness(data, std::vector<std::string>{name}, target_t));
  return out;
}

// Stochastic masking mechanism attached to one confidential column.
struct StochasticMechanismSpec {
  // family: laplace (the only supported family)
  double scale = 0;
  std::string column;

  void validate() const {
    if (!(scale > 0)) fail(errc::bad_spec, "mechanism scale must be > 0");
  }
};

// Closeness of the theoretical output distributions: the per-class and
// table-level mixtures of the mechanism applied to each record's value,
// compared by the density-ratio sup on a shared grid.
inline ClosenessReport check_stochastic_t_closeness(const Microdata& data,
                                                    const StochasticMechanismSpec& mech,
                                                    double target_t,
                                                    std::size_t grid_resolution = 10001) {
  if (!(target_t >= 1)) fail(errc::bad_threshold, "t must be >= 1");
  mech.validate();
  std::size_t col = data.column_index(mech.column);
  if (data.schema[col].role != Role::confidential)
    fail(errc::no_confidential, "column '" + mech.column + "' is not a confidential attribute");
  if (data.schema[col].kind != Kind::numeric)
    fail(errc::non_numeric_column, "column '" + mech.column + "' is not numeric");

  std::vector<double> centers;
  centers.reserve(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) centers.push_back(data.numeric(r, col));
  auto grid = laplace_grid(centers, mech.scale, grid_resolution);
  auto global = laplace_mixture(centers, mech.scale, grid);

  ClosenessReport report;
  report.target_t = target_t;
  for (const auto& ec : equivalence_classes(data)) {
    std::vector<double> class_centers;
    class_centers.reserve(ec.size());
    for (auto r : ec.record_indices) class_centers.push_back(centers[r]);
    auto class_density = laplace_mixture(class_centers, mech.scale, grid);
    auto d = density_ratio_sup(class_density, global);
    report.per_class.push_back({ec.class_id, d});
    report.achieved_t = ExtendedDistance::max(report.achieved_t, d);
  }
  report.satisfied = report.achieved_t.at_most(target_t);
  return report;
}

}  // namespace tcdp
