#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fraisse/process.hpp"

namespace fraisse {

/// JSON Lines: a "fraisse-trace v1" header record, one record per event, then a
/// summary record with the chosen windows and final map size. Keys are sorted, so
/// equal runs give equal bytes.
std::string trace_jsonl(const std::string& structure, const ProcessParams& params,
                        const SampleResult& result);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace fraisse
