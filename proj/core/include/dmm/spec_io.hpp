#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "dmm/engine.hpp"

namespace dmm {

// Network spec file layout (JSON):
// {
//   "mode": "lightweight" | "countable",
//   "m": 2, "n": 2,                       // lightweight only
//   "neurons": [{"name": ..., "type": ..., "params": {...},
//                "rows": [...], "cols": [...]}],
//   "self": {"neuron": ..., "mode": "literal"|"optimized",
//            "overflow_policy": "reset"|"halt",
//            "enforce_rows": {"<row>": {"<col>": w, ...}}},
//   "initial_matrix": [["<row>", "<col>", w], ...],
//   "initial_outputs": {"<col>": <matrix literal>},
//   "inputs": {"<neuron>": [<matrix literal>, ...]},
//   "steps": 100
// }
// Row/column keys are decimal integers in lightweight mode and
// index-language strings in countable mode; triplet keys may be given as
// JSON numbers in lightweight mode.
NetworkSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const NetworkSpec& spec);

NetworkSpec load_spec(const std::string& path);
void save_spec(const NetworkSpec& spec, const std::string& path);

// One JSON object per line, one line per up movement:
// {"t": 1, "watched": {"<key>": <number or matrix literal>}}
void write_trace_jsonl(std::ostream& os, const Trace& trace);

}  // namespace dmm
