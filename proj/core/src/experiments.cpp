#include "dmm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dmm/neuron_library.hpp"
#include "dmm/value_json.hpp"

namespace dmm {
namespace {

nlohmann::json dense_params(const DenseMatrix& k) {
  return {{"value", value_to_json(k)}};
}

DenseMatrix scalar_fill(int m, int n, double x) {
  DenseMatrix d(m, n);
  for (double& v : d.a) v = x;
  return d;
}

std::string key(int i) { return std::to_string(i); }

}  // namespace

NetworkSpec build_oscillation() {
  NetworkSpec spec;
  spec.mode = Mode::Lightweight;
  spec.m = 2;
  spec.n = 2;

  NeuronDecl self;
  self.name = "main";
  self.type = "self2";
  self.rows = {"0", "1"};
  self.cols = {"0"};
  spec.neurons.push_back(self);

  DenseMatrix y1(2, 2);
  y1.at(1, 1) = -2.0;
  NeuronDecl c;
  c.name = "y1";
  c.type = "const";
  c.params = dense_params(y1);
  c.cols = {"1"};
  spec.neurons.push_back(c);

  spec.self_neuron = "main";
  spec.initial_matrix = {{"0", "0", 1.0}, {"1", "1", 1.0}};
  spec.enforced_rows["0"] = {{"0", 1.0}};
  spec.default_steps = 100;
  return spec;
}

NetworkSpec build_wave(int n, std::vector<int> columns) {
  if (n < 2) throw BadColumns("wave needs n >= 2");
  if (columns.empty()) {
    for (int k = 0; k < n; ++k) columns.push_back(k + 2);
  }
  if (int(columns.size()) != n) {
    throw BadColumns("wave needs exactly n columns");
  }
  std::set<int> seen;
  for (int j : columns) {
    if (j < 1) throw BadColumns("wave columns must avoid column 0");
    if (!seen.insert(j).second) throw BadColumns("wave columns must be distinct");
  }
  int width = *std::max_element(columns.begin(), columns.end()) + 1;

  NetworkSpec spec;
  spec.mode = Mode::Lightweight;
  spec.m = 2;
  spec.n = width;

  NeuronDecl self;
  self.name = "main";
  self.type = "self2";
  self.rows = {"0", "1"};
  self.cols = {"0"};
  spec.neurons.push_back(self);

  for (int k = 0; k < n; ++k) {
    int here = columns[std::size_t(k)];
    int there = columns[std::size_t((k + 1) % n)];
    DenseMatrix u(2, width);
    u.at(1, here) = -1.0;
    u.at(1, there) = 1.0;
    NeuronDecl c;
    c.name = "y" + key(here);
    c.type = "const";
    c.params = dense_params(u);
    c.cols = {key(here)};
    spec.neurons.push_back(c);
  }

  spec.self_neuron = "main";
  spec.initial_matrix = {{"0", "0", 1.0}, {"1", key(columns[0]), 1.0}};
  spec.enforced_rows["0"] = {{"0", 1.0}};
  spec.default_steps = 10 * n;
  return spec;
}

DfaNetwork build_dfa(const DfaSpec& dfa, int max_cols) {
  const int ns = dfa.num_states;
  const int na = dfa.num_symbols;
  if (ns < 1 || na < 1 ||
      int(dfa.transition.size()) != ns * na) {
    throw ValidationError("transition table must be num_states x num_symbols");
  }
  for (int t : dfa.transition) {
    if (t < 0 || t >= ns) throw ValidationError("transition target out of range");
  }
  if (dfa.start < 0 || dfa.start >= ns) {
    throw ValidationError("start state out of range");
  }

  // Column layout: Self | letter inports | gates | update constants | state
  // tags. Row layout: Self x, Self dx, state tag row, then two rows per gate.
  auto inport_col = [&](int a) { return 1 + a; };
  auto gate_col = [&](int s, int a) { return 1 + na + s * na + a; };
  auto const_col = [&](int s, int a) { return 1 + na + ns * na + s * na + a; };
  auto tag_col = [&](int s) { return 1 + na + 2 * ns * na + s; };
  auto gate_row_a = [&](int s, int a) { return 3 + 2 * (s * na + a); };
  auto gate_row_b = [&](int s, int a) { return 4 + 2 * (s * na + a); };
  const int width = 1 + na + 2 * ns * na + ns;
  const int height = 3 + 2 * ns * na;
  if (width > max_cols) {
    throw CapacityExceeded("DFA layout needs " + std::to_string(width) +
                           " columns");
  }

  NetworkSpec spec;
  spec.mode = Mode::Lightweight;
  spec.m = height;
  spec.n = width;

  NeuronDecl self;
  self.name = "main";
  self.type = "self2";
  self.rows = {"0", "1"};
  self.cols = {"0"};
  spec.neurons.push_back(self);

  for (int a = 0; a < na; ++a) {
    NeuronDecl in;
    in.name = "letter" + key(a);
    in.type = "inport";
    in.cols = {key(inport_col(a))};
    spec.neurons.push_back(in);
  }

  spec.initial_matrix.emplace_back("0", "0", 1.0);
  for (int a = 0; a < na; ++a) {
    spec.initial_matrix.emplace_back("1", key(gate_col(dfa.start, a)), 1.0);
  }
  spec.initial_matrix.emplace_back("2", key(tag_col(dfa.start)), 1.0);

  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < na; ++a) {
      const int target = dfa.next(s, a);

      // The update matrix moves the dx-row selection and the tag-row 1
      // from state s to the transition target.
      DenseMatrix u(height, width);
      for (int b = 0; b < na; ++b) {
        u.at(1, gate_col(s, b)) += -1.0;
        u.at(1, gate_col(target, b)) += 1.0;
      }
      u.at(2, tag_col(s)) += -1.0;
      u.at(2, tag_col(target)) += 1.0;

      NeuronDecl c;
      c.name = "u_s" + key(s) + "_a" + key(a);
      c.type = "const";
      c.params = dense_params(u);
      c.cols = {key(const_col(s, a))};
      spec.neurons.push_back(c);

      NeuronDecl g;
      g.name = "gate_s" + key(s) + "_a" + key(a);
      g.type = "hadamard";
      g.rows = {key(gate_row_a(s, a)), key(gate_row_b(s, a))};
      g.cols = {key(gate_col(s, a))};
      spec.neurons.push_back(g);

      spec.initial_matrix.emplace_back(key(gate_row_a(s, a)),
                                       key(inport_col(a)), 1.0);
      spec.initial_matrix.emplace_back(key(gate_row_b(s, a)),
                                       key(const_col(s, a)), 1.0);
    }
  }

  spec.self_neuron = "main";
  spec.enforced_rows["0"] = {{"0", 1.0}};

  DfaNetwork net;
  net.spec = std::move(spec);
  net.dfa = dfa;
  net.state_row = 2;
  for (int s = 0; s < ns; ++s) net.state_cols.push_back(tag_col(s));
  return net;
}

NetworkSpec dfa_spec_with_input(const DfaNetwork& net,
                                const std::vector<int>& input) {
  const int na = net.dfa.num_symbols;
  for (int a : input) {
    if (a < 0 || a >= na) throw ValidationError("input symbol out of range");
  }
  NetworkSpec spec = net.spec;
  const int m = spec.m;
  const int n = spec.n;
  for (int a = 0; a < na; ++a) {
    const std::string name = "letter" + key(a);
    const std::string col = key(1 + a);
    // The letter visible to the down movement of step k is symbol a_k: the
    // first symbol rides on the initial output, the rest on the feed.
    if (!input.empty()) {
      spec.initial_outputs.emplace(
          col, scalar_fill(m, n, input[0] == a ? 1.0 : 0.0));
    }
    std::vector<StreamValue> seq;
    for (std::size_t i = 1; i < input.size(); ++i) {
      seq.push_back(scalar_fill(m, n, input[i] == a ? 1.0 : 0.0));
    }
    spec.inputs[name] = std::move(seq);
  }
  spec.default_steps = int(input.size()) + 1;
  return spec;
}

std::vector<int> run_dfa(const DfaNetwork& net, const std::vector<int>& input,
                         const TypeRegistry& registry) {
  const int steps = int(input.size()) + 1;
  Network network(dfa_spec_with_input(net, input), registry);
  std::vector<int> states;
  for (int step = 0; step < steps; ++step) {
    network.down_movement();
    network.up_movement();
    int decoded = -1;
    for (int s = 0; s < net.dfa.num_states; ++s) {
      double v = v_cell(network.matrix(), key(net.state_row),
                        key(net.state_cols[std::size_t(s)]));
      if (v == 1.0) {
        if (decoded >= 0) throw ValidationError("ambiguous state tag row");
        decoded = s;
      } else if (v != 0.0) {
        throw ValidationError("corrupt state tag row");
      }
    }
    if (decoded < 0) throw ValidationError("empty state tag row");
    states.push_back(decoded);
  }
  return states;
}

namespace {

// GRU column layout; every signal is a scalar-lift matrix on its column.
struct GruLayout {
  int self = 0, one = 1, x = 2, x_d1 = 3, x_d2 = 4;
  int z = 5, z_d1 = 6, z_d2 = 7, omz = 8, omz_d1 = 9;
  int r = 10, h_d1 = 11, h_d2 = 12, h_d3 = 13;
  int p1 = 14, p2 = 15, p3 = 16, hc = 17, h = 18;
  int cols = 19;
};

}  // namespace

GruNetwork build_gru(const GruParams& p, const std::vector<double>& x_seq) {
  if (x_seq.empty()) throw ValidationError("GRU needs a nonempty input");
  const GruLayout L;
  const int n = L.cols;
  const int m = 21;

  NetworkSpec spec;
  spec.mode = Mode::Lightweight;
  spec.m = m;
  spec.n = n;

  int next_row = 2;
  auto add = [&](const std::string& name, const std::string& type, int arity,
                 int col) {
    NeuronDecl d;
    d.name = name;
    d.type = type;
    for (int k = 0; k < arity; ++k) d.rows.push_back(key(next_row++));
    d.cols = {key(col)};
    spec.neurons.push_back(d);
    return d.rows;
  };
  auto wire = [&](const std::string& row, int col, double w) {
    spec.initial_matrix.emplace_back(row, key(col), w);
  };

  NeuronDecl self;
  self.name = "main";
  self.type = "self2";
  self.rows = {"0", "1"};
  self.cols = {"0"};
  spec.neurons.push_back(self);
  spec.initial_matrix.emplace_back("0", "0", 1.0);

  NeuronDecl one;
  one.name = "one";
  one.type = "const";
  one.params = dense_params(scalar_fill(m, n, 1.0));
  one.cols = {key(L.one)};
  spec.neurons.push_back(one);

  NeuronDecl x;
  x.name = "x";
  x.type = "inport";
  x.cols = {key(L.x)};
  spec.neurons.push_back(x);

  auto x_d1 = add("x_d1", "identity", 1, L.x_d1);
  wire(x_d1[0], L.x, 1.0);
  auto x_d2 = add("x_d2", "identity", 1, L.x_d2);
  wire(x_d2[0], L.x_d1, 1.0);

  auto z = add("z", "sigmoid", 1, L.z);
  wire(z[0], L.x, p.w_z);
  wire(z[0], L.h, p.u_z);
  wire(z[0], L.one, p.b_z);
  auto z_d1 = add("z_d1", "identity", 1, L.z_d1);
  wire(z_d1[0], L.z, 1.0);
  auto z_d2 = add("z_d2", "identity", 1, L.z_d2);
  wire(z_d2[0], L.z_d1, 1.0);

  // 1 - z as a linear neuron.
  auto omz = add("one_minus_z", "identity", 1, L.omz);
  wire(omz[0], L.one, 1.0);
  wire(omz[0], L.z, -1.0);
  auto omz_d1 = add("one_minus_z_d1", "identity", 1, L.omz_d1);
  wire(omz_d1[0], L.omz, 1.0);

  auto r = add("r", "sigmoid", 1, L.r);
  wire(r[0], L.x, p.w_r);
  wire(r[0], L.h, p.u_r);
  wire(r[0], L.one, p.b_r);

  auto h_d1 = add("h_d1", "identity", 1, L.h_d1);
  wire(h_d1[0], L.h, 1.0);
  auto h_d2 = add("h_d2", "identity", 1, L.h_d2);
  wire(h_d2[0], L.h_d1, 1.0);
  auto h_d3 = add("h_d3", "identity", 1, L.h_d3);
  wire(h_d3[0], L.h_d2, 1.0);

  auto p1 = add("p1", "hadamard", 2, L.p1);  // r * h_{t-1}
  wire(p1[0], L.r, 1.0);
  wire(p1[1], L.h_d1, 1.0);

  auto hc = add("hc", "tanh", 1, L.hc);
  wire(hc[0], L.x_d2, p.w_h);
  wire(hc[0], L.p1, p.u_h);
  wire(hc[0], L.one, p.b_h);

  auto p2 = add("p2", "hadamard", 2, L.p2);  // z * hc
  wire(p2[0], L.z_d2, 1.0);
  wire(p2[1], L.hc, 1.0);
  auto p3 = add("p3", "hadamard", 2, L.p3);  // (1 - z) * h_{t-1}
  wire(p3[0], L.omz_d1, 1.0);
  wire(p3[1], L.h_d3, 1.0);

  auto h = add("h", "identity", 1, L.h);  // h = p2 + p3
  wire(h[0], L.p2, 1.0);
  wire(h[0], L.p3, 1.0);

  spec.self_neuron = "main";
  spec.enforced_rows["0"] = {{"0", 1.0}};

  GruNetwork net;
  net.micro_steps = 5;
  net.h_col = L.h;
  net.params = p;

  // Hold each x_t constant across its five micro-steps; x_1 also rides on
  // the inport's initial output.
  const int total = net.micro_steps * int(x_seq.size());
  spec.initial_outputs.emplace(key(L.x), scalar_fill(m, n, x_seq[0]));
  spec.initial_outputs.emplace(key(L.h), scalar_fill(m, n, p.h0));
  std::vector<StreamValue> feed;
  for (int i = 0; i + 1 <= total; ++i) {
    std::size_t t = std::min(std::size_t((i + 1) / net.micro_steps),
                             x_seq.size() - 1);
    feed.push_back(scalar_fill(m, n, x_seq[t]));
  }
  spec.inputs["x"] = std::move(feed);
  spec.default_steps = total;

  net.spec = std::move(spec);
  return net;
}

std::vector<double> gru_reference(const GruParams& p,
                                  const std::vector<double>& x_seq) {
  std::vector<double> hs;
  double h = p.h0;
  for (double x : x_seq) {
    double z = sigmoid(p.w_z * x + p.u_z * h + p.b_z);
    double r = sigmoid(p.w_r * x + p.u_r * h + p.b_r);
    double hc = std::tanh(p.w_h * x + p.u_h * (r * h) + p.b_h);
    h = (1.0 - z) * h + z * hc;
    hs.push_back(h);
  }
  return hs;
}

std::vector<double> run_gru(const GruNetwork& net,
                            const std::vector<double>& x_seq,
                            const TypeRegistry& registry) {
  Network network(net.spec, registry);
  std::vector<double> hs;
  for (std::size_t t = 1; t <= x_seq.size(); ++t) {
    for (int micro = 0; micro < net.micro_steps; ++micro) {
      network.down_movement();
      network.up_movement();
    }
    StreamValue out = network.output(key(net.h_col));
    hs.push_back(std::get<DenseMatrix>(out).at(0, 0));
  }
  return hs;
}

std::pair<long long, long long> operator_space_dims(int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("arities must be >= 1");
  long long mm = m, nn = n;
  return {mm * mm * mm * nn * nn * nn, mm * nn};
}

}  // namespace dmm
