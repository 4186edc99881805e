#pragma once

#include <json.hpp>

#include "tcdp/bounds.hpp"
#include "tcdp/closeness.hpp"
#include "tcdp/dp_release.hpp"
#include "tcdp/release.hpp"
#include "tcdp/verify.hpp"

namespace tcdp {

using json = nlohmann::ordered_json;

// INFINITE serializes as the string "inf"; finite distances as numbers.
inline json to_json(const ExtendedDistance& d) {
  if (d.is_infinite()) return json("inf");
  return json(d.value());
}

inline json to_json(const ClosenessReport& report) {
  json per_class = json::array();
  for (const auto& cd : report.per_class)
    per_class.push_back({{"class_id", cd.class_id}, {"achieved_distance", to_json(cd.distance)}});
  return json{{"target_t", report.target_t},
              {"per_class", per_class},
              {"achieved_t", to_json(report.achieved_t)},
              {"satisfied", report.satisfied}};
}

inline json to_json(const BoundCertificate& cert) {
  json out{{"direction", cert.direction == BoundDirection::dp_to_t ? "dp_to_t" : "t_to_dp"},
           {"epsilon", cert.epsilon},
           {"t", cert.t},
           {"formula_note", cert.formula_note}};
  if (cert.direction == BoundDirection::dp_to_t) {
    out["n"] = cert.n;
    out["class_sizes"] = cert.class_sizes;
    out["attained_class_size"] = cert.attained_size;
  }
  return out;
}

inline json to_json(const Prop3Report& report) {
  json class_vs_global = json::array();
  for (const auto& cd : report.class_vs_global)
    class_vs_global.push_back({{"class_id", cd.class_id}, {"distance", to_json(cd.distance)}});
  json pairwise = json::array();
  for (const auto& pd : report.pairwise)
    pairwise.push_back(
        {{"class_a", pd.class_a}, {"class_b", pd.class_b}, {"distance", to_json(pd.distance)}});
  return json{{"t", report.t},
              {"class_vs_global", class_vs_global},
              {"max_class_vs_global", to_json(report.max_class_vs_global)},
              {"pairwise", pairwise},
              {"max_pairwise", to_json(report.max_pairwise)},
              {"pairwise_bound", report.pairwise_bound},
              {"passed", report.passed}};
}

// Runtime is intentionally omitted: verification output must be bit-for-bit
// reproducible from (spec, seed, parameters).
inline json to_json(const VerificationReport& report) {
  json out{{"claim", report.claim},
           {"trials", report.trials},
           {"worst_observed", to_json(report.worst_observed)},
           {"bound", report.bound},
           {"tolerance", report.tolerance},
           {"passed", report.passed}};
  out["margin"] = report.worst_observed.is_infinite() ? json("-inf") : json(report.margin());
  return out;
}

inline json to_json(const AnonymizedDataset& release) {
  json buckets = json::array();
  for (std::size_t j = 0; j < release.buckets.b; ++j)
    buckets.push_back({{"label", release.buckets.buckets[j].label},
                       {"size", release.buckets.sizes[j]},
                       {"mass", release.buckets.mass[j]}});
  json classes = json::array();
  for (const auto& cls : release.partition.classes)
    classes.push_back({{"class_id", cls.class_id},
                       {"size", cls.size()},
                       {"emphasized_bucket", cls.emphasized_bucket},
                       {"bucket_counts", cls.bucket_counts}});
  json provenance = json::array();
  for (const auto& p : release.provenance) provenance.push_back({p.class_id, p.bucket});
  return json{{"kind", "t-close-release"},
              {"t", release.t},
              {"l", release.l},
              {"strategy", std::string(to_string(release.strategy))},
              {"column", release.buckets.column},
              {"k", release.partition.k},
              {"buckets", buckets},
              {"classes", classes},
              {"provenance", provenance},
              {"certificate", to_json(release.certificate)}};
}

inline json to_json(const DpRelease& release) {
  json mechanisms = json::array();
  for (const auto& cm : release.mechanisms)
    mechanisms.push_back({{"column", cm.column},
                          {"family", "laplace"},
                          {"epsilon", cm.mechanism.epsilon},
                          {"sensitivity", cm.mechanism.sensitivity},
                          {"scale", cm.mechanism.scale()}});
  json classes = json::array();
  for (const auto& cls : release.partition.classes)
    classes.push_back({{"class_id", cls.class_id}, {"size", cls.size()}});
  json provenance = json::array();
  for (const auto& p : release.provenance) provenance.push_back(p.class_id);
  return json{{"kind", "dp-release"},
              {"k", release.k},
              {"epsilon", release.epsilon},
              {"seed", release.seed},
              {"mechanisms", mechanisms},
              {"microaggregation_classes", classes},
              {"realized_class_sizes", release.realized_class_sizes},
              {"provenance", provenance},
              {"certificate", to_json(release.certificate)}};
}

inline SweepConfig parse_sweep_config(const json& j) {
  SweepConfig config;
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("grid_resolution"))
    config.grid_resolution = j.at("grid_resolution").get<std::size_t>();
  const auto& dp = j.at("dp_to_t");
  config.n_values = dp.at("n").get<std::vector<std::size_t>>();
  config.epsilons = dp.at("epsilon").get<std::vector<double>>();
  config.layouts = dp.at("layouts").get<std::vector<std::string>>();
  if (j.contains("t_construction")) {
    for (const auto& c : j.at("t_construction")) {
      SweepConstructionCase cc;
      cc.n = c.at("n").get<std::size_t>();
      cc.t = c.at("t").get<int>();
      cc.l = c.at("l").get<int>();
      cc.trials = c.at("trials").get<std::size_t>();
      config.construction.push_back(cc);
    }
  }
  return config;
}

}  // namespace tcdp
