#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraisse/cli.hpp"

using namespace fraisse::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round trip and validation") {
  ExperimentConfig c;
  c.structure = "rational-order";
  c.seed = 11;
  c.M = {1, 2};
  c.h = {{0, 1}, {1, 0}};
  c.bound = 5;
  auto back = from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(back.h == c.h);
  CHECK_THROWS_AS(from_json(nlohmann::json{{"stagez", 3}}), ConfigError);
  CHECK_THROWS_AS(from_json(nlohmann::json{{"stages", "three"}}), ConfigError);
  CHECK_THROWS_AS(from_json(nlohmann::json::array()), ConfigError);
  // Config keys override earlier values and leave the rest alone.
  auto merged = from_json(nlohmann::json{{"runs", 7}}, c);
  CHECK(merged.runs == 7);
  CHECK(merged.structure == "rational-order");
}

TEST_CASE("list parsing") {
  CHECK(parse_list("1,2,30") == std::vector<std::uint64_t>{1, 2, 30});
  CHECK(parse_pairs("0:1,1:0") == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}, {1, 0}});
  CHECK_THROWS_AS(parse_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_pairs("0-1"), ConfigError);
}

TEST_CASE("sampling requires a seed and is byte-reproducible") {
  ExperimentConfig c;
  c.structure = "random-graph";
  c.stages = 12;
  c.M = {1};
  c.N = {2};
  CHECK_THROWS_AS(cmd_sample(c), ConfigError);
  c.seed = 7;
  auto a = cmd_sample(c);
  auto b = cmd_sample(c);
  CHECK(a.trace_jsonl == b.trace_jsonl);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.csv == b.csv);
  CHECK(a.report["final_size"] == 12);
  // First line is the header record.
  auto header = nlohmann::json::parse(a.trace_jsonl.substr(0, a.trace_jsonl.find('\n')));
  CHECK(header["format"] == "fraisse-trace v1");
  CHECK(header["seed"] == 7);
  c.seed = 8;
  CHECK(cmd_sample(c).trace_jsonl != a.trace_jsonl);
}

TEST_CASE("sampling failures name the stage") {
  ExperimentConfig c;
  c.structure = "random-graph";
  c.stages = 6;
  c.seed = 7;
  try {
    cmd_sample(c);
    FAIL("default schedule on the random graph should exhaust the scan");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).starts_with("stage "));
  }
}

TEST_CASE("zoo command") {
  ExperimentConfig c;
  CHECK_THROWS_AS(cmd_zoo(c), ConfigError);
  c.group = "z2_semidirect_z3pow:1";
  auto out = cmd_zoo(c);
  CHECK(out.report["group"]["class_count"] == 3);
  CHECK(out.report["group"]["conjugation_closed"] == true);
  c.group = "quaternion:8";
  CHECK_THROWS_AS(cmd_zoo(c), ConfigError);
  c.group.clear();
  c.carrier = "2:2";
  auto z2 = cmd_zoo(c);
  CHECK(z2.report["proposition"]["pass"] == false);
  CHECK(z2.report["proposition"]["two_divisible"] == false);
  c.carrier.clear();
  c.table = 3;
  auto table = cmd_zoo(c);
  CHECK(table.report["table"].back()["constructible"] == false);
}

TEST_CASE("check command") {
  ExperimentConfig c;
  c.check_class = "linear-orders";
  c.size = 3;
  auto sap = cmd_check(c);
  CHECK(sap.report["pass"] == true);
  CHECK(sap.csv == "property,pass\nsap,true\n");
  c.property = "csap";
  CHECK(cmd_check(c).report["pass"] == true);
  c.check_class = "integer-distance";
  c.property = "sap";
  CHECK(cmd_check(c).report["pass"] == false);
  c.property = "schmerl";
  c.structure = "rational-order";
  CHECK(cmd_check(c).report["consistent"] == true);
  c.property = "nope";
  CHECK_THROWS_AS(cmd_check(c), ConfigError);
  c.property = "sap";
  c.check_class = "trees";
  CHECK_THROWS_AS(cmd_check(c), ConfigError);
}

TEST_CASE("analyze command") {
  ExperimentConfig c;
  c.structure = "rational-order";
  c.stages = 6;
  c.seed = 3;
  c.h = {{0, 1}, {1, 0}};
  auto out = cmd_analyze(c);
  CHECK(out.report["stages"].size() == 6);
  CHECK(out.report.contains("orbitals"));
  CHECK(out.report["bad_events"].is_array());
  c.h = {{0, 1}};
  CHECK_THROWS_AS(cmd_analyze(c), ConfigError);

  ExperimentConfig g;
  g.structure = "random-graph";
  g.stages = 8;
  g.seed = 1;
  g.M = {1};
  g.N = {2};
  g.witness_a = {0};
  g.witness_b = {1};
  auto w = cmd_analyze(g);
  CHECK(w.report["witness"].is_number());
}

TEST_CASE("stats command") {
  ExperimentConfig c;
  c.structure = "pure-set";
  c.stages = 8;
  c.seed = 5;
  c.runs = 20;
  c.gates = {"bad-events", "stabilization"};
  auto out = cmd_stats(c);
  CHECK(out.report["gates"].contains("bad-events"));
  CHECK(out.report["run_errors"] == 0);
  CHECK(out.report["stages"].size() == 8);
  c.parallel = false;
  CHECK(cmd_stats(c).report.dump() != out.report.dump());  // config records the kernel choice
  auto serial = cmd_stats(c).report;
  serial["config"] = out.report["config"];
  CHECK(serial.dump() == out.report.dump());
  c.gates = {"intersection"};
  CHECK_THROWS_AS(cmd_stats(c), ConfigError);
  c.gates = {"bogus"};
  CHECK_THROWS_AS(cmd_stats(c), ConfigError);
}

TEST_CASE("outputs keep timings in a sidecar") {
  ExperimentConfig c;
  c.group = "sym:3";
  auto out = cmd_zoo(c);
  auto dir = std::filesystem::temp_directory_path() / "fraisse_cli_test";
  std::filesystem::remove_all(dir);
  write_outputs(dir.string(), "zoo", out, 0.5);
  auto first = slurp(dir / "zoo.json");
  write_outputs(dir.string(), "zoo", out, 0.9);
  CHECK(slurp(dir / "zoo.json") == first);
  CHECK(std::filesystem::exists(dir / "zoo.classes.csv"));
  CHECK(slurp(dir / "zoo.timing.json").find("0.9") != std::string::npos);
  std::filesystem::remove_all(dir);
  CHECK(error_record("config", "x")["error"]["kind"] == "config");
}
