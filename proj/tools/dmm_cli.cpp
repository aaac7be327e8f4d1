// Command-line front end: validate and run network spec files, run the
// built-in demos, and parse index names.
//
// Exit codes: 0 success, 1 validation/parse failure, 2 runtime halt
// (overflow under the Halt policy).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmm/engine.hpp"
#include "dmm/experiments.hpp"
#include "dmm/index_language.hpp"
#include "dmm/neuron_library.hpp"
#include "dmm/spec_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

dmm::TypeRegistry builtin_registry() {
  dmm::TypeRegistry reg;
  dmm::register_builtins(reg);
  return reg;
}

std::vector<dmm::WatchKey> parse_watch_args(
    const std::vector<std::string>& args) {
  std::vector<dmm::WatchKey> keys;
  for (const auto& arg : args) {
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      // "cell:r,c" carries its own comma; re-join with the next piece.
      if (item == "cell" || (item.rfind("cell:", 0) == 0 &&
                             item.find(',') == std::string::npos)) {
        std::string rest;
        if (std::getline(ss, rest, ',')) item += "," + rest;
      }
      if (!item.empty()) keys.push_back(dmm::parse_watch_key(item));
    }
  }
  return keys;
}

int run_spec(const dmm::NetworkSpec& spec, int steps,
             const std::vector<dmm::WatchKey>& watch,
             const std::string& trace_path) {
  dmm::TypeRegistry reg = builtin_registry();
  dmm::Network net(spec, reg);
  dmm::Trace trace = net.run(steps, watch);
  if (trace_path.empty() || trace_path == "-") {
    dmm::write_trace_jsonl(std::cout, trace);
  } else {
    std::ofstream out(trace_path);
    if (!out) {
      std::cerr << "error: cannot write trace file '" << trace_path << "'\n";
      return kExitInvalid;
    }
    dmm::write_trace_jsonl(out, trace);
  }
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  dmm::NetworkSpec spec = dmm::load_spec(path);
  dmm::TypeRegistry reg = builtin_registry();
  dmm::Network net(spec, reg);
  std::cout << "ok: " << spec.neurons.size() << " neurons, mode "
            << (spec.mode == dmm::Mode::Lightweight ? "lightweight"
                                                    : "countable")
            << "\n";
  return kExitOk;
}

int cmd_run(const std::string& path, int steps,
            const std::vector<std::string>& watch_args,
            const std::string& trace_path) {
  dmm::NetworkSpec spec = dmm::load_spec(path);
  if (steps < 0) steps = spec.default_steps;
  return run_spec(spec, steps, parse_watch_args(watch_args), trace_path);
}

void maybe_emit(const dmm::NetworkSpec& spec, const std::string& path) {
  if (path.empty()) return;
  dmm::save_spec(spec, path);
  std::cout << "spec written to " << path << "\n";
}

int demo_oscillation(int steps, const std::string& emit) {
  dmm::NetworkSpec spec = dmm::build_oscillation();
  if (steps < 0) steps = spec.default_steps;
  maybe_emit(spec, emit);
  dmm::TypeRegistry reg = builtin_registry();
  dmm::Network net(spec, reg);
  std::vector<dmm::WatchKey> watch = {dmm::parse_watch_key("Y0[1][1]")};
  dmm::Trace trace = net.run(steps, watch);
  std::cout << "Y0[1][1]:";
  for (const auto& rec : trace) {
    std::cout << " " << std::get<double>(rec.watched[0].second);
  }
  std::cout << "\n";
  return kExitOk;
}

int demo_wave(int n, const std::vector<int>& columns, int steps,
              const std::string& emit) {
  dmm::NetworkSpec spec = dmm::build_wave(n, columns);
  if (steps < 0) steps = spec.default_steps;
  maybe_emit(spec, emit);
  dmm::TypeRegistry reg = builtin_registry();
  dmm::Network net(spec, reg);
  std::cout << "row-1 position:";
  for (int t = 0; t < steps; ++t) {
    net.down_movement();
    net.up_movement();
    int pos = -1;
    for (int j = 0; j < spec.n; ++j) {
      if (dmm::v_cell(net.matrix(), "1", std::to_string(j)) != 0.0) pos = j;
    }
    std::cout << " " << pos;
  }
  std::cout << "\n";
  return kExitOk;
}

int demo_dfa(unsigned seed, int length, const std::string& emit) {
  std::mt19937 rng(seed);
  dmm::DfaSpec dfa;
  dfa.num_states = std::uniform_int_distribution<int>(2, 4)(rng);
  dfa.num_symbols = std::uniform_int_distribution<int>(2, 3)(rng);
  std::uniform_int_distribution<int> state(0, dfa.num_states - 1);
  for (int i = 0; i < dfa.num_states * dfa.num_symbols; ++i) {
    dfa.transition.push_back(state(rng));
  }
  dfa.start = state(rng);

  std::uniform_int_distribution<int> symbol(0, dfa.num_symbols - 1);
  std::vector<int> input;
  for (int i = 0; i < length; ++i) input.push_back(symbol(rng));

  dmm::DfaNetwork net = dmm::build_dfa(dfa);
  maybe_emit(dmm::dfa_spec_with_input(net, input), emit);

  dmm::TypeRegistry reg = builtin_registry();
  std::vector<int> states = dmm::run_dfa(net, input, reg);

  std::cout << "dfa: " << dfa.num_states << " states, " << dfa.num_symbols
            << " symbols, start " << dfa.start << "\n";
  std::cout << "input:";
  for (int a : input) std::cout << " " << a;
  std::cout << "\nstates:";
  for (int s : states) std::cout << " " << s;
  std::cout << "\n";

  // Cross-check against direct table walking.
  std::vector<int> direct = {dfa.start};
  for (int a : input) direct.push_back(dfa.next(direct.back(), a));
  std::cout << (states == direct ? "matches direct simulation"
                                 : "MISMATCH vs direct simulation")
            << "\n";
  return states == direct ? kExitOk : kExitRuntime;
}

int demo_gru(unsigned seed, int steps, const std::string& emit) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  dmm::GruParams p;
  p.w_z = coef(rng); p.u_z = coef(rng); p.b_z = coef(rng);
  p.w_r = coef(rng); p.u_r = coef(rng); p.b_r = coef(rng);
  p.w_h = coef(rng); p.u_h = coef(rng); p.b_h = coef(rng);
  p.h0 = coef(rng);
  std::vector<double> xs;
  for (int i = 0; i < steps; ++i) xs.push_back(coef(rng));

  dmm::GruNetwork net = dmm::build_gru(p, xs);
  maybe_emit(net.spec, emit);

  dmm::TypeRegistry reg = builtin_registry();
  std::vector<double> got = dmm::run_gru(net, xs, reg);
  std::vector<double> want = dmm::gru_reference(p, xs);
  double max_err = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    max_err = std::max(max_err, std::abs(got[i] - want[i]));
  }
  std::printf("gru: %d steps, max |network - reference| = %.3e\n", steps,
              max_err);
  return max_err <= 1e-9 ? kExitOk : kExitRuntime;
}

int cmd_parse_index(const std::string& s) {
  dmm::IndexName n = dmm::parse_index(s);
  std::cout << "type=" << n.type_name << " kind=";
  switch (n.kind) {
    case dmm::IndexName::Kind::Neuron: std::cout << "neuron"; break;
    case dmm::IndexName::Kind::Input: std::cout << "input k=" << n.k; break;
    case dmm::IndexName::Kind::Output: std::cout << "output k=" << n.k; break;
  }
  std::cout << " name=" << n.simple_name << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for self-referential matrix stream networks"};
  app.require_subcommand(1);

  std::string spec_path;
  auto* validate = app.add_subcommand("validate", "Check a network spec file");
  validate->add_option("path", spec_path, "spec file (JSON)")->required();

  std::string run_path, trace_path;
  int steps = -1;
  std::vector<std::string> watch_args;
  auto* run = app.add_subcommand("run", "Run a network spec file");
  run->add_option("path", run_path, "spec file (JSON)")->required();
  run->add_option("--steps", steps, "number of steps (default: spec)");
  run->add_option("--watch", watch_args,
                  "watch keys: Y0[i][j], cell:<row>,<col>, out:<key>; "
                  "comma-separated or repeated");
  run->add_option("--trace", trace_path, "JSONL trace file ('-' = stdout)");

  std::string demo_name, emit_path;
  int demo_steps = -1, wave_n = 3, dfa_length = 50;
  unsigned seed = 0;
  std::vector<int> wave_columns;
  auto* demo = app.add_subcommand("demo", "Run a built-in demo");
  demo->add_option("name", demo_name, "oscillation | wave | dfa | gru")
      ->required();
  demo->add_option("--steps", demo_steps, "number of steps");
  demo->add_option("--n", wave_n, "wave: number of update matrices");
  demo->add_option("--columns", wave_columns, "wave: explicit column list");
  demo->add_option("--seed", seed, "dfa/gru: RNG seed");
  demo->add_option("--length", dfa_length, "dfa: input length");
  demo->add_option("--emit-spec", emit_path, "write the demo's spec file");

  std::string index_str;
  auto* parse = app.add_subcommand("parse-index", "Parse an index name");
  parse->add_option("string", index_str, "e.g. sum2@i1\\acc")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(spec_path);
    if (run->parsed()) return cmd_run(run_path, steps, watch_args, trace_path);
    if (parse->parsed()) return cmd_parse_index(index_str);
    if (demo->parsed()) {
      if (demo_name == "oscillation") {
        return demo_oscillation(demo_steps, emit_path);
      }
      if (demo_name == "wave") {
        return demo_wave(wave_n, wave_columns, demo_steps, emit_path);
      }
      if (demo_name == "dfa") return demo_dfa(seed, dfa_length, emit_path);
      if (demo_name == "gru") {
        return demo_gru(seed, demo_steps < 0 ? 100 : demo_steps, emit_path);
      }
      std::cerr << "error: unknown demo '" << demo_name << "'\n";
      return kExitInvalid;
    }
  } catch (const dmm::OverflowHalt& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const dmm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
