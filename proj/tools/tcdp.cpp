#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include <tcdp/csv.hpp>
#include <tcdp/dp_release.hpp>
#include <tcdp/json_io.hpp>
#include <tcdp/release.hpp>
#include <tcdp/verify.hpp>

namespace {

using tcdp::json;

// Exit codes: 0 success, 1 privacy/data constraint not met, 2 usage or I/O.
int exit_code_for(const tcdp::error& e) {
  switch (e.code()) {
    case tcdp::errc::too_small:
    case tcdp::errc::bad_l:
    case tcdp::errc::infeasible:
    case tcdp::errc::k_too_large:
    case tcdp::errc::not_t_close:
      return 1;
    default:
      return 2;
  }
}

std::vector<std::string> split_list(const std::string& csv_list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv_list) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    tcdp::csv::write_file_atomic(output_path, text);
  }
}

struct CheckArgs {
  std::string input, schema, columns, output;
  double t = 1;
  bool per_attribute = false;
  double stochastic_scale = 0;
  std::string stochastic_column;
  std::size_t grid_resolution = 10001;
};

int run_check(const CheckArgs& args) {
  auto schema = tcdp::load_schema(args.schema);
  auto data = tcdp::load_dataset(args.input, schema);

  if (args.stochastic_scale > 0 || !args.stochastic_column.empty()) {
    tcdp::StochasticMechanismSpec mech;
    mech.scale = args.stochastic_scale;
    mech.column = args.stochastic_column;
    auto report = tcdp::check_stochastic_t_closeness(data, mech, args.t, args.grid_resolution);
    emit(tcdp::to_json(report).dump(2) + "\n", args.output);
    return report.satisfied ? 0 : 1;
  }

  std::vector<std::string> columns;
  if (args.columns.empty()) {
    for (auto c : data.columns_with_role(tcdp::Role::confidential))
      columns.push_back(data.schema[c].name);
  } else {
    columns = split_list(args.columns);
  }

  if (args.per_attribute) {
    auto reports = tcdp::check_t_closeness_per_attribute(data, columns, args.t);
    json out = json::array();
    bool all_ok = true;
    for (const auto& [column, report] : reports) {
      out.push_back({{"column", column}, {"report", tcdp::to_json(report)}});
      all_ok = all_ok && report.satisfied;
    }
    emit(out.dump(2) + "\n", args.output);
    return all_ok ? 0 : 1;
  }

  auto report = tcdp::check_t_closeness(data, columns, args.t);
  emit(tcdp::to_json(report).dump(2) + "\n", args.output);
  return report.satisfied ? 0 : 1;
}

struct TcloseArgs {
  std::string input, schema, column, output, sidecar, strategy = "greedy-seed";
  double t = 2;
  int l = 1;
};

int run_anonymize_tclose(const TcloseArgs& args) {
  auto schema = tcdp::load_schema(args.schema);
  auto data = tcdp::load_dataset(args.input, schema);
  std::string column = args.column;
  if (column.empty()) {
    auto conf = data.columns_with_role(tcdp::Role::confidential);
    if (conf.size() != 1)
      tcdp::fail(tcdp::errc::no_confidential,
                 "pass --column when the schema has more than one confidential attribute");
    column = data.schema[conf[0]].name;
  }
  auto release =
      tcdp::anonymize_t_close(data, column, args.t, args.l, tcdp::parse_strategy(args.strategy));
  tcdp::save_dataset(release.data, args.output);
  tcdp::save_schema(release.data.schema, args.output + ".schema");
  std::string sidecar = args.sidecar.empty() ? args.output + ".json" : args.sidecar;
  tcdp::csv::write_file_atomic(sidecar, tcdp::to_json(release).dump(2) + "\n");
  return 0;
}

struct DpArgs {
  std::string input, schema, output, sidecar;
  std::size_t k = 2;
  double epsilon = 1;
  std::uint64_t seed = 1;
};

int run_anonymize_dp(const DpArgs& args) {
  auto schema = tcdp::load_schema(args.schema);
  auto data = tcdp::load_dataset(args.input, schema);
  auto release = tcdp::anonymize_dp(data, args.k, args.epsilon, args.seed);
  tcdp::save_dataset(release.data, args.output);
  tcdp::save_schema(release.data.schema, args.output + ".schema");
  std::string sidecar = args.sidecar.empty() ? args.output + ".json" : args.sidecar;
  tcdp::csv::write_file_atomic(sidecar, tcdp::to_json(release).dump(2) + "\n");
  return 0;
}

struct BoundArgs {
  bool dp_to_t = false;
  bool t_to_eps = false;
  std::size_t n = 0;
  std::string classes;
  double epsilon = 0;
  double t = 1;
  std::string coefficient = "full";
  std::string output;
};

int run_bound(const BoundArgs& args) {
  if (args.dp_to_t == args.t_to_eps)
    tcdp::fail(tcdp::errc::bad_spec, "pass exactly one of --dp-to-t / --t-to-eps");
  tcdp::BoundCertificate cert;
  if (args.dp_to_t) {
    std::vector<std::size_t> sizes;
    for (const auto& part : split_list(args.classes)) {
      if (part.empty()) tcdp::fail(tcdp::errc::sizes_mismatch, "empty entry in --classes");
      sizes.push_back(static_cast<std::size_t>(std::stoull(part)));
    }
    bool minus_one = args.coefficient == "minus-one";
    if (!minus_one && args.coefficient != "full")
      tcdp::fail(tcdp::errc::bad_spec, "--coefficient must be full or minus-one");
    cert = tcdp::dp_to_t_bound(args.n, sizes, args.epsilon, minus_one);
  } else {
    cert = tcdp::t_to_eps(args.t);
  }
  emit(tcdp::to_json(cert).dump(2) + "\n", args.output);
  return 0;
}

struct VerifyArgs {
  std::string sweep;
  std::string output;
};

int run_verify(const VerifyArgs& args) {
  json config_json;
  try {
    config_json = json::parse(tcdp::csv::read_file(args.sweep));
  } catch (const nlohmann::json::exception& e) {
    tcdp::fail(tcdp::errc::bad_spec, std::string("sweep config: ") + e.what());
  }
  auto config = tcdp::parse_sweep_config(config_json);
  auto reports = tcdp::run_sweep(config);
  std::string lines;
  bool all_ok = true;
  for (const auto& report : reports) {
    lines += tcdp::to_json(report).dump() + "\n";
    all_ok = all_ok && report.passed;
  }
  emit(lines, args.output);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Microdata anonymization: t-closeness construction, differential-privacy "
               "pipeline, parameter conversion bounds, and verification sweeps"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Check (stochastic) t-closeness of a dataset");
  check->add_option("--input", check_args.input, "Input CSV")->required();
  check->add_option("--schema", check_args.schema, "Schema sidecar file")->required();
  check->add_option("--t", check_args.t, "Closeness threshold (real, >= 1)")->required();
  check->add_option("--columns", check_args.columns,
                    "Comma-separated confidential columns (default: all)");
  check->add_flag("--per-attribute", check_args.per_attribute,
                  "Report each confidential column separately instead of jointly");
  check->add_option("--stochastic-scale", check_args.stochastic_scale,
                    "Laplace scale: check stochastic closeness of this mechanism");
  check->add_option("--stochastic-column", check_args.stochastic_column,
                    "Numeric confidential column the mechanism applies to");
  check->add_option("--grid-resolution", check_args.grid_resolution,
                    "Grid points for stochastic checks (default 10001)");
  check->add_option("--output", check_args.output, "Write the JSON report here (default stdout)");

  TcloseArgs tclose_args;
  auto* tclose = app.add_subcommand("anonymize-tclose",
                                    "Bucketize + partition into a k-anonymous t-close release");
  tclose->add_option("--input", tclose_args.input, "Input CSV")->required();
  tclose->add_option("--schema", tclose_args.schema, "Schema sidecar file")->required();
  tclose->add_option("--t", tclose_args.t, "Closeness level (integer >= 1)")->required();
  tclose->add_option("--l", tclose_args.l, "Classes per emphasized bucket (>= 1)")->required();
  tclose->add_option("--column", tclose_args.column,
                     "Confidential column to bucketize (default: the only one)");
  tclose->add_option("--strategy", tclose_args.strategy,
                     "Record selection: greedy-seed | sorted-scan");
  tclose->add_option("--output", tclose_args.output, "Release CSV path")->required();
  tclose->add_option("--sidecar", tclose_args.sidecar,
                     "Certificate/provenance JSON path (default <output>.json)");

  DpArgs dp_args;
  auto* dp = app.add_subcommand("anonymize-dp",
                                "k-anonymous microaggregation + Laplace noise on confidential "
                                "attributes");
  dp->add_option("--input", dp_args.input, "Input CSV")->required();
  dp->add_option("--schema", dp_args.schema, "Schema sidecar file")->required();
  dp->add_option("--k", dp_args.k, "Minimum class size")->required();
  dp->add_option("--epsilon", dp_args.epsilon, "Total privacy budget")->required();
  dp->add_option("--seed", dp_args.seed, "Noise seed (default 1)");
  dp->add_option("--output", dp_args.output, "Release CSV path")->required();
  dp->add_option("--sidecar", dp_args.sidecar,
                 "Certificate/provenance JSON path (default <output>.json)");

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Convert between epsilon and t");
  bound->add_flag("--dp-to-t", bound_args.dp_to_t, "Convert epsilon to the implied t");
  bound->add_flag("--t-to-eps", bound_args.t_to_eps, "Convert t to the implied epsilon");
  bound->add_option("--n", bound_args.n, "Record count (dp-to-t)");
  bound->add_option("--classes", bound_args.classes, "Comma-separated class sizes (dp-to-t)");
  bound->add_option("--epsilon", bound_args.epsilon, "Privacy budget (dp-to-t)");
  bound->add_option("--t", bound_args.t, "Closeness level (t-to-eps)");
  bound->add_option("--coefficient", bound_args.coefficient,
                    "dp-to-t coefficient variant: full (default) | minus-one");
  bound->add_option("--output", bound_args.output, "Write the JSON here (default stdout)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the verification sweep from a config file");
  verify->add_option("--sweep", verify_args.sweep, "Sweep config JSON")->required();
  verify->add_option("--output", verify_args.output,
                     "Write JSON-lines reports here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return run_check(check_args);
    if (*tclose) return run_anonymize_tclose(tclose_args);
    if (*dp) return run_anonymize_dp(dp_args);
    if (*bound) return run_bound(bound_args);
    if (*verify) return run_verify(verify_args);
  } catch (const tcdp::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
