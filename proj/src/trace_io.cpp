#include "fraisse/trace_io.hpp"

#include <cstdio>
#include <json.hpp>

namespace fraisse {

std::string trace_jsonl(const std::string& structure, const ProcessParams& params,
                        const SampleResult& result) {
  using nlohmann::json;
  std::string out;
  json header{{"format", "fraisse-trace v1"},
              {"structure", structure},
              {"seed", params.seed},
              {"stages", params.stages},
              {"M", params.M},
              {"initial", result.initial.size()}};
  if (params.N) header["N"] = *params.N;
  out += header.dump() + "\n";
  for (const auto& e : result.trace) {
    json record{{"stage", e.stage},
                {"substep", e.substep},
                {"x", e.x.index},
                {"chosen", e.chosen.index},
                {"mode", e.mode == ChoiceMode::Finite ? "finite" : "window"},
                {"candidates", e.candidates}};
    out += record.dump() + "\n";
  }
  json windows = json::array();
  for (const auto& w : result.windows)
    windows.push_back({{"N", w.N}, {"K", w.K}, {"k", w.k}, {"j", w.j}, {"conservative", w.conservative}});
  json summary{{"final_size", result.final_map.size()}, {"windows", windows}};
  out += summary.dump() + "\n";
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace fraisse
