// Copyright 2026 The Patrolbot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "patrol/proto/kv.hpp"
#include "patrol/scenario/runner.hpp"

namespace patrol::scenario {

inline constexpr const char* kTraceFormat = "patrol-trace/1";

/// One key-value line per record: a header holding the run config, one
/// line per tick and a closing summary. Wall-clock figures stay out so
/// equal runs give equal bytes.
std::string trace_header(const ScenarioConfig& cfg, const std::string& map_name);
std::string trace_line(const TickRecord& rec);
std::string trace_summary(const RunSummary& s);
std::string render_trace(const ScenarioConfig& cfg, const std::string& map_name,
                         const std::vector<TickRecord>& ticks, const RunSummary& summary);

/// Parsed trace, as far as the tools need it.
struct TraceFile {
  nlohmann::json config;
  std::vector<proto::KvRecord> ticks;
  proto::KvRecord summary;
};
/// Throws ConfigError when the text is not a trace.
TraceFile parse_trace(const std::string& text);

nlohmann::json summary_to_json(const RunSummary& s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace patrol::scenario
