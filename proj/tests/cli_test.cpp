#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <json.hpp>

#include "subprocess.hpp"

using nlohmann::json;
using testutil::fixtures_dir;
using testutil::run_cli;
using testutil::scratch_dir;
using testutil::slurp;

TEST_CASE("bound --dp-to-t prints the converted t") {
  auto dir = scratch_dir("cli_bound");
  auto result = run_cli("bound --dp-to-t --n 12 --classes 4,4,4 --epsilon 0.6931471805599453",
                        dir + "/out.json");
  REQUIRE(result.exit_code == 0);
  auto cert = json::parse(result.stdout_text);
  CHECK(std::abs(cert["t"].get<double>() - 5.0 / 3.0) < 1e-12);
  CHECK(cert["attained_class_size"] == 4);
}

TEST_CASE("bound --t-to-eps prints 2 ln t") {
  auto dir = scratch_dir("cli_bound");
  auto result = run_cli("bound --t-to-eps --t 1.5", dir + "/eps.json");
  REQUIRE(result.exit_code == 0);
  auto cert = json::parse(result.stdout_text);
  CHECK(std::abs(cert["epsilon"].get<double>() - 0.8109302162163288) < 1e-15);
}

TEST_CASE("bound with the minus-one coefficient is available for comparison") {
  auto dir = scratch_dir("cli_bound");
  auto result = run_cli(
      "bound --dp-to-t --n 12 --classes 4,4,4 --epsilon 0 --coefficient minus-one",
      dir + "/stmt.json");
  REQUIRE(result.exit_code == 0);
  auto cert = json::parse(result.stdout_text);
  CHECK(cert["t"].get<double>() < 1.0);  // the minus-one variant dips below 1 at eps = 0
}

TEST_CASE("check exits 0 when satisfied and 1 when not") {
  auto dir = scratch_dir("cli_check");
  auto fixture = fixtures_dir() + "/fig2.csv --schema " + fixtures_dir() + "/fig2.schema";
  auto ok = run_cli("check --input " + fixture + " --t 1.5", dir + "/ok.json");
  CHECK(ok.exit_code == 0);
  auto report = json::parse(ok.stdout_text);
  CHECK(report["satisfied"] == true);
  CHECK(report["achieved_t"] == 1.5);

  auto tight = run_cli("check --input " + fixture + " --t 1.2", dir + "/tight.json");
  CHECK(tight.exit_code == 1);
  CHECK(json::parse(tight.stdout_text)["satisfied"] == false);
}

TEST_CASE("check writes report files atomically when asked") {
  auto dir = scratch_dir("cli_check");
  auto fixture = fixtures_dir() + "/fig2.csv --schema " + fixtures_dir() + "/fig2.schema";
  auto result =
      run_cli("check --input " + fixture + " --t 1.5 --output " + dir + "/report.json",
              dir + "/stdout.txt");
  REQUIRE(result.exit_code == 0);
  CHECK(result.stdout_text.empty());
  auto report = json::parse(slurp(dir + "/report.json"));
  CHECK(report["achieved_t"] == 1.5);
}

TEST_CASE("check --per-attribute reports one entry per confidential column") {
  auto dir = scratch_dir("cli_check");
  auto result = run_cli("check --input " + fixtures_dir() + "/fig2.csv --schema " +
                            fixtures_dir() + "/fig2.schema --t 1.5 --per-attribute",
                        dir + "/per_attr.json");
  REQUIRE(result.exit_code == 0);
  auto reports = json::parse(result.stdout_text);
  REQUIRE(reports.is_array());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["column"] == "bucket");
  CHECK(reports[0]["report"]["satisfied"] == true);
}

TEST_CASE("check --stochastic-scale runs the mechanism-level check") {
  auto dir = scratch_dir("cli_check");
  auto result = run_cli("check --input " + fixtures_dir() + "/fig1_raw.csv --schema " +
                            fixtures_dir() + "/fig1_raw.schema --t 1.6666666666666667 "
                            "--stochastic-scale 144.2695040888963 --stochastic-column Salary "
                            "--grid-resolution 2001",
                        dir + "/stoch.json");
  REQUIRE(result.exit_code == 0);
  auto report = json::parse(result.stdout_text);
  CHECK(report["satisfied"] == true);
  CHECK(report["achieved_t"].get<double>() > 1.0);
}

TEST_CASE("anonymize-tclose writes release, schema and certificate sidecar") {
  auto dir = scratch_dir("cli_tclose");
  auto result = run_cli("anonymize-tclose --input " + fixtures_dir() + "/fig1_raw.csv --schema " +
                            fixtures_dir() + "/fig1_raw.schema --t 2 --l 1 --output " + dir +
                            "/release.csv",
                        dir + "/stdout.txt");
  REQUIRE(result.exit_code == 0);
  CHECK(std::filesystem::exists(dir + "/release.csv"));
  CHECK(std::filesystem::exists(dir + "/release.csv.schema"));
  auto sidecar = json::parse(slurp(dir + "/release.csv.json"));
  CHECK(sidecar["kind"] == "t-close-release");
  CHECK(sidecar["certificate"]["satisfied"] == true);
  CHECK(sidecar["certificate"]["achieved_t"] == 1.5);
  CHECK(sidecar["k"] == 4);

  // The release must pass an independent check at the same t.
  auto check = run_cli("check --input " + dir + "/release.csv --schema " + dir +
                           "/release.csv.schema --t 2",
                       dir + "/check.json");
  CHECK(check.exit_code == 0);
}

TEST_CASE("anonymize-tclose propagates infeasibility as exit 1") {
  auto dir = scratch_dir("cli_tclose");
  // 12 records at t=3 need N >= 16.
  auto result = run_cli("anonymize-tclose --input " + fixtures_dir() + "/fig1_raw.csv --schema " +
                            fixtures_dir() + "/fig1_raw.schema --t 3 --l 1 --output " + dir +
                            "/too_small.csv",
                        dir + "/stdout2.txt");
  CHECK(result.exit_code == 1);
  CHECK(!std::filesystem::exists(dir + "/too_small.csv"));
}

TEST_CASE("anonymize-dp writes a noised release with a conversion certificate") {
  auto dir = scratch_dir("cli_dp");
  auto result = run_cli("anonymize-dp --input " + fixtures_dir() + "/fig1_raw.csv --schema " +
                            fixtures_dir() + "/fig1_raw.schema --k 4 --epsilon 0.6931471805599453 "
                            "--seed 42 --output " +
                            dir + "/dp.csv",
                        dir + "/stdout.txt");
  REQUIRE(result.exit_code == 0);
  auto sidecar = json::parse(slurp(dir + "/dp.csv.json"));
  CHECK(sidecar["kind"] == "dp-release");
  CHECK(sidecar["realized_class_sizes"] == json::array({4, 4, 4}));
  CHECK(std::abs(sidecar["certificate"]["t"].get<double>() - 5.0 / 3.0) < 1e-12);
  CHECK(sidecar["mechanisms"][0]["sensitivity"] == 100.0);
}

TEST_CASE("verify runs a sweep config and emits one JSON line per claim") {
  auto dir = scratch_dir("cli_verify");
  std::string config = dir + "/mini_sweep.json";
  {
    std::ofstream out(config);
    out << R"({"seed": 5, "grid_resolution": 2001,
                "dp_to_t": {"n": [12], "epsilon": [0.5], "layouts": ["equal"]},
                "t_construction": [{"n": 12, "t": 2, "l": 1, "trials": 3}]})";
  }
  auto result = run_cli("verify --sweep " + config, dir + "/out.jsonl");
  REQUIRE(result.exit_code == 0);
  int lines = 0;
  std::istringstream in(result.stdout_text);
  std::string line;
  while (std::getline(in, line)) {
    auto report = json::parse(line);
    CHECK(report["passed"] == true);
    CHECK(!report.contains("runtime"));
    ++lines;
  }
  CHECK(lines == 3);  // sup + record-ratio + construction
}

TEST_CASE("usage errors exit with 2") {
  auto dir = scratch_dir("cli_usage");
  CHECK(run_cli("check --t 1.5", dir + "/a.txt").exit_code == 2);        // missing input
  CHECK(run_cli("mystery-command", dir + "/b.txt").exit_code == 2);      // unknown subcommand
  CHECK(run_cli("bound --n 12", dir + "/c.txt").exit_code == 2);         // no direction
  CHECK(run_cli("check --input nope.csv --schema nope.schema --t 1.5", dir + "/d.txt").exit_code ==
        2);  // missing files
}

TEST_CASE("inputs are never mutated and reruns are byte-identical") {
  auto dir = scratch_dir("cli_idem");
  auto fixture_before = slurp(fixtures_dir() + "/fig1_raw.csv");
  std::string base = "anonymize-dp --input " + fixtures_dir() + "/fig1_raw.csv --schema " +
                     fixtures_dir() + "/fig1_raw.schema --k 4 --epsilon 1 --seed 7 --output ";
  auto first = run_cli(base + dir + "/r1.csv", dir + "/s1.txt");
  auto second = run_cli(base + dir + "/r2.csv", dir + "/s2.txt");
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);
  CHECK(slurp(dir + "/r1.csv") == slurp(dir + "/r2.csv"));
  CHECK(slurp(dir + "/r1.csv.json") == slurp(dir + "/r2.csv.json"));
  CHECK(slurp(fixtures_dir() + "/fig1_raw.csv") == fixture_before);
}
