#include "dmm/spec_io.hpp"

#include <fstream>
#include <ostream>

#include "dmm/value_json.hpp"

namespace dmm {

using nlohmann::json;

namespace {

std::string key_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("row/column keys must be strings or integers");
}

}  // namespace

NetworkSpec spec_from_json(const json& j) {
  NetworkSpec spec;
  std::string mode = j.value("mode", "lightweight");
  if (mode == "lightweight") {
    spec.mode = Mode::Lightweight;
    spec.m = j.value("m", 0);
    spec.n = j.value("n", 0);
  } else if (mode == "countable") {
    spec.mode = Mode::Countable;
  } else {
    throw ParseError("mode must be 'lightweight' or 'countable'");
  }

  if (!j.contains("neurons") || !j.at("neurons").is_array()) {
    throw ParseError("missing neurons array");
  }
  for (const auto& nj : j.at("neurons")) {
    NeuronDecl d;
    d.name = nj.at("name").get<std::string>();
    d.type = nj.at("type").get<std::string>();
    d.params = nj.value("params", json::object());
    for (const auto& r : nj.value("rows", json::array())) {
      d.rows.push_back(key_from_json(r));
    }
    for (const auto& c : nj.value("cols", json::array())) {
      d.cols.push_back(key_from_json(c));
    }
    spec.neurons.push_back(std::move(d));
  }

  if (!j.contains("self")) throw ParseError("missing Self section");
  const json& sj = j.at("self");
  spec.self_neuron = sj.at("neuron").get<std::string>();
  std::string smode = sj.value("mode", "literal");
  if (smode == "literal") {
    spec.self_mode = SelfMode::Literal;
  } else if (smode == "optimized") {
    spec.self_mode = SelfMode::Optimized;
  } else {
    throw ParseError("self.mode must be 'literal' or 'optimized'");
  }
  std::string policy = sj.value("overflow_policy", "reset");
  if (policy == "reset") {
    spec.overflow = OverflowPolicy::ResetToZero;
  } else if (policy == "halt") {
    spec.overflow = OverflowPolicy::Halt;
  } else {
    throw ParseError("overflow_policy must be 'reset' or 'halt'");
  }
  const json enforce = sj.value("enforce_rows", json::object());
  for (const auto& [row, cols] : enforce.items()) {
    std::map<std::string, double> vals;
    for (const auto& [col, v] : cols.items()) vals[col] = v.get<double>();
    spec.enforced_rows[row] = std::move(vals);
  }

  for (const auto& t : j.value("initial_matrix", json::array())) {
    if (!t.is_array() || t.size() != 3) {
      throw ParseError("initial_matrix entries must be [row, col, w]");
    }
    spec.initial_matrix.emplace_back(key_from_json(t.at(0)),
                                     key_from_json(t.at(1)),
                                     t.at(2).get<double>());
  }
  const json init_outs = j.value("initial_outputs", json::object());
  for (const auto& [col, v] : init_outs.items()) {
    spec.initial_outputs.emplace(
        col, value_from_json(v, spec.mode, spec.m, spec.n));
  }
  const json inputs = j.value("inputs", json::object());
  for (const auto& [name, seq] : inputs.items()) {
    std::vector<StreamValue> values;
    for (const auto& v : seq) {
      values.push_back(value_from_json(v, spec.mode, spec.m, spec.n));
    }
    spec.inputs.emplace(name, std::move(values));
  }
  spec.default_steps = j.value("steps", 0);
  return spec;
}

json spec_to_json(const NetworkSpec& spec) {
  json j;
  j["mode"] = spec.mode == Mode::Lightweight ? "lightweight" : "countable";
  if (spec.mode == Mode::Lightweight) {
    j["m"] = spec.m;
    j["n"] = spec.n;
  }
  json neurons = json::array();
  for (const auto& d : spec.neurons) {
    json nj;
    nj["name"] = d.name;
    nj["type"] = d.type;
    if (!d.params.empty()) nj["params"] = d.params;
    nj["rows"] = d.rows;
    nj["cols"] = d.cols;
    neurons.push_back(std::move(nj));
  }
  j["neurons"] = std::move(neurons);

  json sj;
  sj["neuron"] = spec.self_neuron;
  sj["mode"] = spec.self_mode == SelfMode::Literal ? "literal" : "optimized";
  sj["overflow_policy"] =
      spec.overflow == OverflowPolicy::ResetToZero ? "reset" : "halt";
  if (!spec.enforced_rows.empty()) {
    json rows = json::object();
    for (const auto& [row, cols] : spec.enforced_rows) {
      json cj = json::object();
      for (const auto& [col, v] : cols) cj[col] = v;
      rows[row] = std::move(cj);
    }
    sj["enforce_rows"] = std::move(rows);
  }
  j["self"] = std::move(sj);

  json triplets = json::array();
  for (const auto& [r, c, v] : spec.initial_matrix) {
    triplets.push_back(json::array({r, c, v}));
  }
  j["initial_matrix"] = std::move(triplets);

  if (!spec.initial_outputs.empty()) {
    json outs = json::object();
    for (const auto& [col, v] : spec.initial_outputs) {
      outs[col] = value_to_json(v);
    }
    j["initial_outputs"] = std::move(outs);
  }
  if (!spec.inputs.empty()) {
    json ins = json::object();
    for (const auto& [name, seq] : spec.inputs) {
      json sq = json::array();
      for (const auto& v : seq) sq.push_back(value_to_json(v));
      ins[name] = std::move(sq);
    }
    j["inputs"] = std::move(ins);
  }
  if (spec.default_steps > 0) j["steps"] = spec.default_steps;
  return j;
}

NetworkSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return spec_from_json(j);
}

void save_spec(const NetworkSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write spec file '" + path + "'");
  out << spec_to_json(spec).dump(2) << "\n";
}

void write_trace_jsonl(std::ostream& os, const Trace& trace) {
  for (const auto& rec : trace) {
    json j;
    j["t"] = rec.t;
    json watched = json::object();
    for (const auto& [key, value] : rec.watched) {
      if (const auto* d = std::get_if<double>(&value)) {
        watched[key] = *d;
      } else {
        watched[key] = value_to_json(std::get<StreamValue>(value));
      }
    }
    j["watched"] = std::move(watched);
    os << j.dump() << "\n";
  }
}

}  // namespace dmm
