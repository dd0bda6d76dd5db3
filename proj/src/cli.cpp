#include "fraisse/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraisse/amalgamation.hpp"
#include "fraisse/montecarlo.hpp"
#include "fraisse/trace_io.hpp"
#include "fraisse/user_relational.hpp"
#include "fraisse/zoo.hpp"

namespace fraisse::cli {

using nlohmann::json;

namespace {

ProcessParams process_params(const ExperimentConfig& c) {
  if (!c.seed) throw ConfigError("--seed is required for sampling commands");
  if (c.stages == 0) throw ConfigError("--stages must be positive");
  auto p = ProcessParams::defaults(c.stages, *c.seed);
  if (!c.M.empty()) p.M = c.M;
  if (!c.N.empty()) p.N = c.N;
  return p;
}

json points_json(const PointSet& s) {
  json out = json::array();
  for (auto p : s) out.push_back(p.index);
  return out;
}

PointSet to_points(const std::vector<std::uint64_t>& v) {
  std::vector<Point> pts;
  for (auto x : v) pts.push_back(Point{x});
  return make_point_set(std::move(pts));
}

json report_json(const ClassReport& r) {
  json j{{"class", r.class_name},     {"max_size", r.max_size},
         {"bound", r.bound},          {"strong", r.strong},
         {"instances", r.instances},  {"amalgamated", r.amalgamated},
         {"strongly_amalgamated", r.strongly_amalgamated},
         {"complete", r.complete},    {"pass", r.passed()},
         {"note", r.note}};
  j["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
  return j;
}

json report_json(const CsapReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"base", e.base}, {"witness", e.witness ? json(*e.witness) : json(nullptr)}});
  return {{"class", r.class_name}, {"max_size", r.max_size}, {"bound", r.bound},
          {"entries", entries},    {"pass", r.passed()},     {"note", r.note}};
}

json report_json(const SchmerlReport& r) {
  return {{"structure", r.structure},
          {"class", r.class_name},
          {"sap_pass", r.sap_pass},
          {"no_algebraicity", r.no_algebraicity},
          {"acl_trusted", r.acl_trusted},
          {"consistent", r.consistent},
          {"pass", r.consistent},
          {"detail", r.detail}};
}

ClassSpec relational_class(const std::string& name) {
  if (name == "graphs") return graph_class();
  if (name == "linear-orders") return linear_order_class();
  if (name == "pure-sets") return pure_set_class();
  if (name.starts_with("file:")) return load_structure_file(name.substr(5)).spec;
  throw ConfigError("unknown class '" + name +
                    "' (graphs, linear-orders, pure-sets, boolean, integer-distance, file:PATH)");
}

std::string csv_row(const json& report, const std::vector<std::string>& keys) {
  std::string header, row;
  for (const auto& k : keys) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += k;
    const auto& v = report.at(k);
    row += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return header + "\n" + row + "\n";
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  json j{{"structure", c.structure},
         {"stages", c.stages},
         {"M", c.M},
         {"N", c.N},
         {"runs", c.runs},
         {"gates", c.gates},
         {"h_points", c.h_points},
         {"parallel", c.parallel},
         {"h", c.h},
         {"witness_a", c.witness_a},
         {"witness_b", c.witness_b},
         {"witness_bound", c.witness_bound},
         {"tracked_entry", c.tracked_entry},
         {"check_class", c.check_class},
         {"property", c.property},
         {"size", c.size},
         {"group", c.group},
         {"group_file", c.group_file},
         {"carrier", c.carrier}};
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["bound"] = c.bound ? json(*c.bound) : json(nullptr);
  j["table"] = c.table ? json(*c.table) : json(nullptr);
  return j;
}

ExperimentConfig from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "structure") c.structure = v.get<std::string>();
      else if (key == "stages") c.stages = v.get<unsigned>();
      else if (key == "seed") c.seed = v.is_null() ? std::nullopt : std::optional(v.get<std::uint64_t>());
      else if (key == "M") c.M = v.get<std::vector<std::uint64_t>>();
      else if (key == "N") c.N = v.get<std::vector<std::uint64_t>>();
      else if (key == "runs") c.runs = v.get<std::uint64_t>();
      else if (key == "gates") c.gates = v.get<std::vector<std::string>>();
      else if (key == "h_points") c.h_points = v.get<std::uint64_t>();
      else if (key == "parallel") c.parallel = v.get<bool>();
      else if (key == "h") c.h = v.get<std::vector<std::pair<std::uint64_t, std::uint64_t>>>();
      else if (key == "witness_a") c.witness_a = v.get<std::vector<std::uint64_t>>();
      else if (key == "witness_b") c.witness_b = v.get<std::vector<std::uint64_t>>();
      else if (key == "witness_bound") c.witness_bound = v.get<std::uint64_t>();
      else if (key == "tracked_entry") c.tracked_entry = v.get<std::size_t>();
      else if (key == "check_class") c.check_class = v.get<std::string>();
      else if (key == "property") c.property = v.get<std::string>();
      else if (key == "size") c.size = v.get<std::size_t>();
      else if (key == "bound") c.bound = v.is_null() ? std::nullopt : std::optional(v.get<std::size_t>());
      else if (key == "group") c.group = v.get<std::string>();
      else if (key == "group_file") c.group_file = v.get<std::string>();
      else if (key == "table") c.table = v.is_null() ? std::nullopt : std::optional(v.get<std::size_t>());
      else if (key == "carrier") c.carrier = v.get<std::string>();
      else if (key == "out_dir") c.out_dir = v.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  return c;
}

CommandOutput cmd_sample(const ExperimentConfig& c) {
  auto params = process_params(c);
  Process process(make_structure(c.structure), params);
  for (unsigned i = 1; i <= c.stages; ++i) {
    try {
      process.run_stage();
    } catch (const std::exception& e) {
      throw std::runtime_error("stage " + std::to_string(i) + ": " + e.what());
    }
  }
  SampleResult result{process.initial(), process.map(), process.trace(), process.windows()};
  CommandOutput out;
  out.trace_jsonl = trace_jsonl(c.structure, params, result);
  json windows = json::array();
  for (const auto& w : result.windows) windows.push_back(w.N);
  out.report = {{"command", "sample"},
                {"config", to_json(c)},
                {"events", result.trace.size()},
                {"final_size", result.final_map.size()},
                {"fixed_points", result.final_map.fixed_point_count()},
                {"N", windows},
                {"trace_fnv1a", hex64(fnv1a(out.trace_jsonl))}};
  out.csv_name = "events.csv";
  out.csv = "stage,substep,x,chosen,mode,candidates\n";
  for (const auto& e : result.trace)
    out.csv += std::to_string(e.stage) + "," + std::to_string(e.substep) + "," +
               std::to_string(e.x.index) + "," + std::to_string(e.chosen.index) + "," +
               (e.mode == ChoiceMode::Finite ? "finite" : "window") + "," +
               std::to_string(e.candidates) + "\n";
  return out;
}

CommandOutput cmd_analyze(const ExperimentConfig& c) {
  auto params = process_params(c);
  auto structure = make_structure(c.structure);
  Process process(structure, params);
  OrbitSchedule schedule(structure);
  const auto tracked = schedule.entry(c.tracked_entry);

  CommandOutput out;
  out.csv_name = "stages.csv";
  out.csv = "stage,domain_size,paths,cycles,fixed_points,orbit_intersections\n";
  json stages = json::array();
  for (unsigned i = 1; i <= c.stages; ++i) {
    try {
      process.run_stage();
    } catch (const std::exception& e) {
      throw std::runtime_error("stage " + std::to_string(i) + ": " + e.what());
    }
    auto dec = decompose(process.map());
    auto hits = orbit_intersection_count(*structure, dec, tracked.fixed, tracked.representative);
    stages.push_back({{"stage", i},
                      {"domain_size", process.map().size()},
                      {"paths", dec.paths.size()},
                      {"cycles", dec.cycles.size()},
                      {"fixed_points", dec.fixed_points()},
                      {"orbit_intersections", hits}});
    out.csv += std::to_string(i) + "," + std::to_string(process.map().size()) + "," +
               std::to_string(dec.paths.size()) + "," + std::to_string(dec.cycles.size()) + "," +
               std::to_string(dec.fixed_points()) + "," + std::to_string(hits) + "\n";
  }

  PartialAutomorphism hmap;
  for (auto [a, b] : c.h) hmap.add(Point{a}, Point{b});
  FinitePermutation h = [&] {
    try {
      return FinitePermutation(hmap);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("h: ") + e.what());
    }
  }();
  json bad = json::array();
  for (const auto& r : detect_bad_events(process.initial(), process.trace(), h))
    bad.push_back({{"stage", r.stage},
                   {"substep", r.substep},
                   {"kind", to_string(r.kind)},
                   {"paths_before", r.paths_before},
                   {"paths_after", r.paths_after}});

  out.report = {{"command", "analyze"},
                {"config", to_json(c)},
                {"tracked", {{"fixed", points_json(tracked.fixed)},
                             {"representative", tracked.representative.index}}},
                {"stages", stages},
                {"bad_events", bad}};

  if (structure->kind() == StructureKind::RationalOrder) {
    auto dec = orbitals(*structure, process.map());
    json list = json::array();
    for (const auto& o : dec)
      list.push_back({{"lower", structure->describe(o.lower)},
                      {"upper", structure->describe(o.upper)},
                      {"parity", o.parity},
                      {"truncated", o.truncated},
                      {"consistent", o.consistent},
                      {"components", o.components}});
    json violations = json::array();
    for (const auto& v : alternation_check(dec))
      violations.push_back({{"first", v.first}, {"second", v.second}, {"provisional", v.provisional}});
    out.report["orbitals"] = list;
    out.report["alternation_violations"] = violations;
  }
  if (structure->kind() == StructureKind::RandomGraph && (!c.witness_a.empty() || !c.witness_b.empty())) {
    std::optional<Point> w;
    try {
      w = random_graph_witness(process.map(), to_points(c.witness_a), to_points(c.witness_b),
                               c.witness_bound);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("witness: ") + e.what());
    }
    out.report["witness"] = w ? json(w->index) : json(nullptr);
  }
  return out;
}

CommandOutput cmd_check(const ExperimentConfig& c) {
  CommandOutput out;
  json report;
  const auto& p = c.property;
  if (p != "sap" && p != "ap" && p != "csap" && p != "schmerl")
    throw ConfigError("unknown property '" + p + "' (sap, ap, csap, schmerl)");
  if (p == "schmerl") {
    report = report_json(schmerl_cross_check(*make_structure(c.structure), c.size));
  } else if (c.check_class == "boolean") {
    // size counts elements; bound counts atoms of the amalgam.
    auto atoms = c.bound.value_or(8);
    if (p == "ap") throw ConfigError("boolean algebras support sap and csap only");
    report = p == "sap" ? report_json(check_sap_boolean(c.size, atoms))
                        : report_json(check_csap_boolean(c.size, atoms));
  } else if (c.check_class == "integer-distance") {
    auto window = static_cast<std::int64_t>(c.bound.value_or(2 * c.size + 4));
    if (p == "ap") throw ConfigError("integer-distance supports sap and csap only");
    report = p == "sap" ? report_json(check_sap_integer_distance(c.size, window))
                        : report_json(check_csap_integer_distance(c.size, c.size, window));
  } else {
    auto cls = relational_class(c.check_class);
    if (p == "csap") {
      report = report_json(check_csap_class(cls, c.size, c.bound.value_or(c.size)));
    } else {
      auto extra = c.bound.value_or(2);
      report = report_json(c.parallel ? check_sap_class_parallel(cls, c.size, p == "sap", extra)
                                      : check_sap_class(cls, c.size, p == "sap", extra));
    }
  }
  report["command"] = "check";
  report["property"] = p;
  report["config"] = to_json(c);
  out.csv_name = "check.csv";
  out.csv = csv_row(report, {"property", "pass"});
  out.report = std::move(report);
  return out;
}

CommandOutput cmd_zoo(const ExperimentConfig& c) {
  if (c.group.empty() && c.group_file.empty() && !c.table && c.carrier.empty())
    throw ConfigError("zoo needs --group, --group-file, --table or --carrier");
  CommandOutput out;
  out.report = {{"command", "zoo"}, {"config", to_json(c)}};
  out.csv_name = "classes.csv";
  out.csv = "group,class,size,representative\n";
  auto describe_group = [&](const zoo::FiniteGroup& g) {
    auto partition = c.parallel ? zoo::conjugacy_classes_parallel(g) : zoo::conjugacy_classes(g);
    json classes = json::array();
    for (std::size_t k = 0; k < partition.classes.size(); ++k) {
      const auto& cls = partition.classes[k];
      json labels = json::array();
      for (auto e : cls) labels.push_back(g.label(e));
      classes.push_back({{"size", cls.size()}, {"elements", labels}});
      out.csv += g.name() + "," + std::to_string(k) + "," + std::to_string(cls.size()) + "," +
                 g.label(cls.front()) + "\n";
    }
    return json{{"name", g.name()},
                {"order", g.order()},
                {"class_count", partition.classes.size()},
                {"conjugation_closed", zoo::conjugation_closed(g, partition)},
                {"classes", classes}};
  };
  try {
    if (!c.group.empty()) out.report["group"] = describe_group(zoo::named_group(c.group));
    if (!c.group_file.empty()) out.report["group_file"] = describe_group(zoo::load_group_file(c.group_file));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!c.carrier.empty()) {
    auto colon = c.carrier.find(':');
    if (colon == std::string::npos) throw ConfigError("--carrier expects m:n");
    zoo::AbelianCarrier carrier{static_cast<std::uint32_t>(std::stoul(c.carrier.substr(0, colon))),
                                static_cast<std::uint32_t>(std::stoul(c.carrier.substr(colon + 1)))};
    auto r = zoo::verify_semidirect_proposition(carrier);
    out.report["proposition"] = {{"carrier", r.carrier},
                                 {"order", r.order},
                                 {"class_count", r.class_count},
                                 {"self_inverse", r.self_inverse},
                                 {"formula", r.formula},
                                 {"two_divisible", r.two_divisible},
                                 {"zero_classes_ok", r.zero_classes_ok},
                                 {"one_class_ok", r.one_class_ok},
                                 {"pass", r.pass},
                                 {"note", r.note}};
  }
  if (c.table) {
    json rows = json::array();
    auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& r : zoo::table1_rows(*c.table))
      rows.push_back({{"row", r.row},
                      {"group", r.group},
                      {"order", opt(r.order)},
                      {"class_count", opt(r.class_count)},
                      {"largest_class", opt(r.largest_class)},
                      {"truncated", r.truncated},
                      {"constructible", r.constructible},
                      {"note", r.note}});
    out.report["table"] = rows;
  }
  return out;
}

CommandOutput cmd_stats(const ExperimentConfig& c) {
  RunConfig config;
  config.structure = c.structure;
  config.params = process_params(c);
  config.h_random_points = c.h_points;
  const auto wants = [&](const std::string& g) {
    return std::find(c.gates.begin(), c.gates.end(), g) != c.gates.end();
  };
  for (const auto& g : c.gates)
    if (g != "bad-events" && g != "stabilization" && g != "intersection")
      throw ConfigError("unknown gate '" + g + "' (bad-events, stabilization, intersection)");
  if (wants("bad-events") && c.stages < 4) throw ConfigError("bad-events gate needs --stages >= 4");
  if (wants("stabilization") && c.stages < 5) throw ConfigError("stabilization gate needs --stages >= 5");
  if (wants("intersection")) {
    if (c.stages < 14) throw ConfigError("intersection gate needs --stages >= 14");
    config.tracked_entry = c.tracked_entry;
  }
  if (c.runs == 0) throw ConfigError("--runs must be positive");

  auto runs = c.parallel ? run_batch_parallel(config, c.runs, *c.seed)
                         : run_batch_serial(config, c.runs, *c.seed);

  CommandOutput out;
  json gates = json::object();
  bool all = true;
  auto record = [&](const std::string& name, const GateResult& g) {
    gates[name] = {{"pass", g.pass}, {"detail", g.detail}};
    all = all && g.pass;
  };
  if (wants("bad-events")) record("bad-events", bad_event_gate(runs, 4, std::min(12u, c.stages)));
  if (wants("stabilization"))
    record("stabilization", stabilization_gate(runs, c.stages - 4, c.stages, 0.95));
  if (wants("intersection")) record("intersection", intersection_gate(runs, 3, 0.9));

  std::uint64_t errors = 0, mismatches = 0;
  for (const auto& r : runs) {
    errors += !r.error.empty();
    mismatches += r.tracker_mismatch;
  }
  out.csv_name = "stages.csv";
  out.csv = "stage,runs,bad_event_frequency,mean_paths,mean_cycles,mean_domain\n";
  json stages = json::array();
  for (unsigned i = 1; i <= c.stages; ++i) {
    std::uint64_t n = 0, with_bad = 0;
    double paths = 0, cycles = 0, domain = 0;
    for (const auto& r : runs) {
      if (r.rows.size() < i) continue;
      const auto& row = r.rows[i - 1];
      ++n;
      with_bad += row.bad_events > 0;
      paths += static_cast<double>(row.paths);
      cycles += static_cast<double>(row.cycles);
      domain += static_cast<double>(row.domain_size);
    }
    if (n == 0) continue;
    double freq = static_cast<double>(with_bad) / static_cast<double>(n);
    double dn = static_cast<double>(n);
    stages.push_back({{"stage", i},
                      {"runs", n},
                      {"bad_event_frequency", freq},
                      {"mean_paths", paths / dn},
                      {"mean_cycles", cycles / dn},
                      {"mean_domain", domain / dn}});
    std::ostringstream line;
    line << i << ',' << n << ',' << freq << ',' << paths / dn << ',' << cycles / dn << ','
         << domain / dn << '\n';
    out.csv += line.str();
  }
  out.report = {{"command", "stats"},
                {"config", to_json(c)},
                {"gates", gates},
                {"pass", all && errors == 0 && mismatches == 0},
                {"run_errors", errors},
                {"tracker_mismatches", mismatches},
                {"stages", stages}};
  return out;
}

CommandOutput run_command(const std::string& name, const ExperimentConfig& c) {
  if (name == "sample") return cmd_sample(c);
  if (name == "analyze") return cmd_analyze(c);
  if (name == "check") return cmd_check(c);
  if (name == "zoo") return cmd_zoo(c);
  if (name == "stats") return cmd_stats(c);
  throw ConfigError("unknown command '" + name + "'");
}

json error_record(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

void write_outputs(const std::string& dir, const std::string& command, const CommandOutput& out,
                   double seconds) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    f << text;
  };
  write(command + ".json", out.report.dump(2) + "\n");
  if (!out.trace_jsonl.empty()) write(command + ".trace.jsonl", out.trace_jsonl);
  if (!out.csv.empty()) write(command + "." + out.csv_name, out.csv);
  write(command + ".timing.json", json{{"seconds", seconds}}.dump() + "\n");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("expected a:b pairs, got '" + item + "'");
    try {
      out.emplace_back(std::stoull(item.substr(0, colon)), std::stoull(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError("bad pair '" + item + "'");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::logic_error&) {
      throw ConfigError("bad number '" + item + "'");
    }
  }
  return out;
}

}  // namespace fraisse::cli
