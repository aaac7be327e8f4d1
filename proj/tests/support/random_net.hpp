// Random finite lightweight networks drawn from the built-in neuron
// catalog, for determinism / prefix / self-mode equivalence testing.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "dmm/engine.hpp"
#include "dmm/value_json.hpp"

namespace testnet {

inline dmm::DenseMatrix random_dense(std::mt19937& rng, int m, int n,
                                     double scale = 1.0) {
  std::uniform_real_distribution<double> coef(-scale, scale);
  dmm::DenseMatrix d(m, n);
  for (double& v : d.a) v = coef(rng);
  return d;
}

// Self on rows 0/1 and column 0, row 0 enforced to keep the x-row identity
// (so the same spec is valid in optimized Self mode), then a handful of
// random neurons wired with random small weights.
inline dmm::NetworkSpec random_network(std::mt19937& rng) {
  std::uniform_int_distribution<int> ncount(2, 5);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> typepick(0, 7);
  const char* types[] = {"identity", "acc2",    "hadamard", "relu",
                         "sigmoid",  "tanh",    "const",    "inport"};
  const int arities[] = {1, 2, 2, 1, 1, 1, 0, 0};

  dmm::NetworkSpec spec;
  spec.mode = dmm::Mode::Lightweight;

  int count = ncount(rng);
  std::vector<int> picks;
  for (int i = 0; i < count; ++i) picks.push_back(typepick(rng));

  int next_row = 2;
  int next_col = 1;
  dmm::NeuronDecl self;
  self.name = "main";
  self.type = "self2";
  self.rows = {"0", "1"};
  self.cols = {"0"};
  spec.neurons.push_back(self);

  std::vector<std::string> input_rows = {"1"};  // Self's dx
  for (int i = 0; i < count; ++i) {
    dmm::NeuronDecl d;
    d.name = "n" + std::to_string(i);
    d.type = types[picks[std::size_t(i)]];
    for (int a = 0; a < arities[picks[std::size_t(i)]]; ++a) {
      d.rows.push_back(std::to_string(next_row));
      input_rows.push_back(d.rows.back());
      ++next_row;
    }
    d.cols = {std::to_string(next_col++)};
    spec.neurons.push_back(d);
  }

  spec.m = next_row;
  spec.n = next_col;

  for (auto& d : spec.neurons) {
    if (d.type == "const") {
      d.params = {{"value", dmm::value_to_json(dmm::StreamValue(
                                random_dense(rng, spec.m, spec.n)))}};
    } else if (d.type == "inport") {
      std::vector<dmm::StreamValue> seq;
      std::uniform_int_distribution<int> len(0, 8);
      int l = len(rng);
      for (int k = 0; k < l; ++k) {
        seq.push_back(random_dense(rng, spec.m, spec.n));
      }
      spec.inputs[d.name] = std::move(seq);
    }
  }

  spec.self_neuron = "main";
  spec.enforced_rows["0"] = {{"0", 1.0}};
  spec.initial_matrix.emplace_back("0", "0", 1.0);
  std::uniform_int_distribution<int> fan(0, 3);
  std::uniform_int_distribution<int> colpick(0, spec.n - 1);
  for (const auto& row : input_rows) {
    int f = fan(rng);
    for (int i = 0; i < f; ++i) {
      spec.initial_matrix.emplace_back(row, std::to_string(colpick(rng)),
                                       coef(rng));
    }
  }
  return spec;
}

// Every matrix cell plus every neuron output: enough to pin the whole
// observable state of a lightweight network.
inline std::vector<dmm::WatchKey> watch_everything(
    const dmm::NetworkSpec& spec) {
  std::vector<dmm::WatchKey> keys;
  for (int i = 0; i < spec.m; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      keys.push_back(dmm::parse_watch_key("Y0[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]"));
    }
  }
  for (int j = 0; j < spec.n; ++j) {
    keys.push_back(dmm::parse_watch_key("out:" + std::to_string(j)));
  }
  return keys;
}

}  // namespace testnet
