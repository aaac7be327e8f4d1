#pragma once

#include <utility>
#include <vector>

#include "dmm/engine.hpp"

namespace dmm {

// Lightweight 2x2 network whose weight Y0[1][1] oscillates -1, 1, -1, ...
// Row 0 of the network matrix is enforced to (1, 0); a constant neuron on
// column 1 feeds -2 into the oscillating cell via Self's dx input.
NetworkSpec build_oscillation();

// Connectivity wave over n constant update matrices on the given columns
// (defaults to 2..n+1). The unique nonzero of row 1 of the network matrix
// cycles through the columns with period n, value exactly 1.
NetworkSpec build_wave(int n, std::vector<int> columns = {});

struct DfaSpec {
  int num_states = 1;
  int num_symbols = 1;
  std::vector<int> transition;  // num_states * num_symbols, [s][a] row-major
  int start = 0;

  int next(int state, int symbol) const {
    return transition[std::size_t(state) * num_symbols + symbol];
  }
};

struct DfaNetwork {
  NetworkSpec spec;
  DfaSpec dfa;
  int state_row = 2;             // designated row carrying the 1-of-N state
  std::vector<int> state_cols;   // column of each state's tag
};

// Embeds the automaton into the self-referential update mechanism: one
// inport per symbol (the 1-of-N letter neurons), one constant update matrix
// and one hadamard gate per (state, symbol) pair, and a tag row whose single
// 1 marks the current state. Throws CapacityExceeded when the layout does
// not fit max_cols columns.
DfaNetwork build_dfa(const DfaSpec& dfa, int max_cols = 256);

// Copy of the embedding spec with the symbol sequence loaded onto the
// letter inports (first symbol rides on the initial outputs).
NetworkSpec dfa_spec_with_input(const DfaNetwork& net,
                                const std::vector<int>& input);

// Runs the embedded network over the symbol sequence and decodes the state
// tag row; the result starts with the start state and has one entry per
// consumed symbol.
std::vector<int> run_dfa(const DfaNetwork& net, const std::vector<int>& input,
                         const TypeRegistry& registry);

struct GruParams {
  double w_z = 0, u_z = 0, b_z = 0;
  double w_r = 0, u_r = 0, b_r = 0;
  double w_h = 0, u_h = 0, b_h = 0;
  double h0 = 0;
};

struct GruNetwork {
  NetworkSpec spec;
  int h_col = 0;
  // The gate/candidate cascade is five neuron layers deep, so one GRU step
  // takes five engine steps; h_t is read at engine time 5 * t.
  int micro_steps = 5;
  GruParams params;
};

// Wires the standard GRU cell from sigmoid, tanh, hadamard (bilinear), and
// identity (linear) neurons; scalar signals ride as constant matrices.
// Topology weights are 0/1, parameter weights come from p.
GruNetwork build_gru(const GruParams& p, const std::vector<double>& x_seq);

// Closed-form recurrence:
//   z_t = sigmoid(w_z x_t + u_z h_{t-1} + b_z)
//   r_t = sigmoid(w_r x_t + u_r h_{t-1} + b_r)
//   hc_t = tanh(w_h x_t + u_h (r_t h_{t-1}) + b_h)
//   h_t = (1 - z_t) h_{t-1} + z_t hc_t
std::vector<double> gru_reference(const GruParams& p,
                                  const std::vector<double>& x_seq);

// Runs the wired network and samples h at the end of each full GRU step.
std::vector<double> run_gru(const GruNetwork& net,
                            const std::vector<double>& x_seq,
                            const TypeRegistry& registry);

// (M^3 * N^3, M * N): dimension of the space of all linear operators from
// the N outputs to the M inputs of a lightweight network, and of the
// subspace its M x N matrices actually use.
std::pair<long long, long long> operator_space_dims(int m, int n);

}  // namespace dmm
