#include <benchmark/benchmark.h>

#include <random>

#include "dmm/engine.hpp"
#include "dmm/experiments.hpp"
#include "dmm/fd_matrix.hpp"
#include "dmm/neuron_library.hpp"

namespace {

dmm::FDMatrix random_fd(std::mt19937& rng, int terms, int excepts) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  dmm::FDMatrix m;
  for (int t = 0; t < terms; ++t) {
    dmm::FDVector u(coef(rng)), v(coef(rng));
    for (int e = 0; e < excepts; ++e) {
      u.set("r" + std::to_string(e), coef(rng));
      v.set("c" + std::to_string(e), coef(rng));
    }
    m.terms.push_back({u, v});
  }
  return m;
}

void BM_fd_hadamard(benchmark::State& state) {
  std::mt19937 rng(1);
  dmm::FDMatrix a = random_fd(rng, int(state.range(0)), 4);
  dmm::FDMatrix b = random_fd(rng, int(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmm::hadamard(a, b));
  }
}
BENCHMARK(BM_fd_hadamard)->Arg(2)->Arg(4)->Arg(8);

void BM_fd_row_combine(benchmark::State& state) {
  std::mt19937 rng(2);
  dmm::FDMatrix a = random_fd(rng, int(state.range(0)), 4);
  dmm::FDVector beta(0.0);
  for (int e = 0; e < 6; ++e) beta.set("r" + std::to_string(e), 0.5 * e);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmm::row_combine(beta, a));
  }
}
BENCHMARK(BM_fd_row_combine)->Arg(2)->Arg(4)->Arg(8);

void BM_engine_step_oscillation(benchmark::State& state) {
  dmm::TypeRegistry reg;
  dmm::register_builtins(reg);
  dmm::Network net(dmm::build_oscillation(), reg);
  for (auto _ : state) {
    net.down_movement();
    net.up_movement();
  }
}
BENCHMARK(BM_engine_step_oscillation);

void BM_engine_step_wave8(benchmark::State& state) {
  dmm::TypeRegistry reg;
  dmm::register_builtins(reg);
  dmm::Network net(dmm::build_wave(8), reg);
  for (auto _ : state) {
    net.down_movement();
    net.up_movement();
  }
}
BENCHMARK(BM_engine_step_wave8);

void BM_gru_run(benchmark::State& state) {
  dmm::TypeRegistry reg;
  dmm::register_builtins(reg);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  dmm::GruParams p{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng),
                   coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
  std::vector<double> xs;
  for (int i = 0; i < int(state.range(0)); ++i) xs.push_back(coef(rng));
  dmm::GruNetwork net = dmm::build_gru(p, xs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmm::run_gru(net, xs, reg));
  }
}
BENCHMARK(BM_gru_run)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
