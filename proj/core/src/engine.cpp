#include "dmm/engine.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "dmm/index_language.hpp"

namespace dmm {
namespace {

bool is_decimal_key(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !(s.size() > 1 && s[0] == '0');
}

int decimal_key(const std::string& s, int limit, const char* what) {
  if (!is_decimal_key(s)) {
    throw ValidationError(std::string(what) + " key '" + s +
                          "' is not a decimal index");
  }
  int v = std::stoi(s);
  if (v < 0 || v >= limit) {
    throw ValidationError(std::string(what) + " key '" + s +
                          "' out of range");
  }
  return v;
}

// Fill in missing row/column keys and validate the declared ones.
void resolve_keys(NetworkSpec& spec, const TypeRegistry& registry) {
  for (auto& decl : spec.neurons) {
    const NeuronType& t = registry.get(decl.type);
    if (spec.mode == Mode::Countable) {
      if (decl.rows.empty() && t.input_arity > 0) {
        for (int k = 1; k <= t.input_arity; ++k) {
          decl.rows.push_back(format_index(
              {decl.type, IndexName::Kind::Input, k, decl.name}));
        }
      }
      if (decl.cols.empty()) {
        for (int k = 1; k <= t.output_arity; ++k) {
          decl.cols.push_back(format_index(
              {decl.type, IndexName::Kind::Output, k, decl.name}));
        }
      }
    }
    if (int(decl.rows.size()) != t.input_arity ||
        int(decl.cols.size()) != t.output_arity) {
      throw ValidationError("neuron '" + decl.name +
                            "' row/column count does not match type '" +
                            decl.type + "' arities");
    }
  }
}

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

void TypeRegistry::add(NeuronType t) {
  if (t.output_arity < 1 || t.input_arity < 0) {
    throw ValidationError("neuron type '" + t.name +
                          "' needs M >= 0 and N >= 1");
  }
  auto [_, inserted] = types_.emplace(t.name, std::move(t));
  if (!inserted) throw DuplicateType("type already registered");
}

const NeuronType& TypeRegistry::get(const std::string& name) const {
  auto it = types_.find(name);
  if (it == types_.end()) throw UnknownType("unknown type '" + name + "'");
  return it->second;
}

bool TypeRegistry::has(const std::string& name) const {
  return types_.count(name) != 0;
}

std::map<std::string, std::pair<int, int>> TypeRegistry::arity_table()
    const {
  std::map<std::string, std::pair<int, int>> t;
  for (const auto& [name, type] : types_) {
    t[name] = {type.input_arity, type.output_arity};
  }
  return t;
}

WatchKey parse_watch_key(const std::string& s) {
  WatchKey w;
  w.raw = s;
  if (s.rfind("out:", 0) == 0) {
    w.kind = WatchKey::Kind::Output;
    w.out_key = s.substr(4);
    if (w.out_key.empty()) throw ParseError("empty output watch key");
    return w;
  }
  if (s.rfind("cell:", 0) == 0) {
    auto body = s.substr(5);
    auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw ParseError("cell watch key needs '<row>,<col>'");
    }
    w.kind = WatchKey::Kind::Cell;
    w.row = body.substr(0, comma);
    w.col = body.substr(comma + 1);
    if (w.row.empty() || w.col.empty()) {
      throw ParseError("empty segment in cell watch key");
    }
    return w;
  }
  // Lightweight form Y0[i][j].
  if (s.rfind("Y0[", 0) == 0 && s.back() == ']') {
    auto mid = s.find("][");
    if (mid != std::string::npos) {
      w.kind = WatchKey::Kind::Cell;
      w.row = s.substr(3, mid - 3);
      w.col = s.substr(mid + 2, s.size() - mid - 3);
      if (is_decimal_key(w.row) && is_decimal_key(w.col)) return w;
    }
  }
  throw ParseError("unrecognized watch key '" + s + "'");
}

bool trace_exact_equal(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].t != b[i].t) return false;
    if (a[i].watched.size() != b[i].watched.size()) return false;
    for (std::size_t j = 0; j < a[i].watched.size(); ++j) {
      const auto& [ka, va] = a[i].watched[j];
      const auto& [kb, vb] = b[i].watched[j];
      if (ka != kb) return false;
      if (va.index() != vb.index()) return false;
      if (auto* da = std::get_if<double>(&va)) {
        if (!bit_equal(*da, std::get<double>(vb))) return false;
      } else if (!v_exact_equal(std::get<StreamValue>(va),
                                std::get<StreamValue>(vb))) {
        return false;
      }
    }
  }
  return true;
}

Network::Network(NetworkSpec spec, const TypeRegistry& registry)
    : spec_(std::move(spec)) {
  if (spec_.mode == Mode::Lightweight && (spec_.m < 1 || spec_.n < 1)) {
    throw ValidationError("lightweight network needs m >= 1 and n >= 1");
  }
  resolve_keys(spec_, registry);

  if (spec_.self_neuron.empty()) {
    throw ValidationError("missing Self neuron designation");
  }
  std::set<std::string> names;
  bool self_found = false;
  for (std::size_t i = 0; i < spec_.neurons.size(); ++i) {
    const NeuronDecl& decl = spec_.neurons[i];
    if (!names.insert(decl.name).second) {
      throw ValidationError("duplicate neuron name '" + decl.name + "'");
    }
    const NeuronType& t = registry.get(decl.type);
    if (decl.name == spec_.self_neuron) {
      if (t.input_arity != 2 || t.output_arity != 1) {
        throw ValidationError("Self must have input arity 2 (x, dx) and "
                              "output arity 1");
      }
      self_index_ = i;
      self_found = true;
    }
    for (int k = 0; k < int(decl.rows.size()); ++k) {
      const std::string& key = decl.rows[k];
      if (spec_.mode == Mode::Lightweight) {
        decimal_key(key, spec_.m, "row");
      } else if (!validate_against_registry(parse_index(key),
                                            registry.arity_table())) {
        throw ValidationError("row key '" + key + "' fails arity bounds");
      }
      if (!row_owner_.emplace(key, std::make_pair(i, k)).second) {
        throw ValidationError("row key '" + key + "' assigned twice");
      }
    }
    for (int k = 0; k < int(decl.cols.size()); ++k) {
      const std::string& key = decl.cols[k];
      if (spec_.mode == Mode::Lightweight) {
        decimal_key(key, spec_.n, "column");
      } else if (!validate_against_registry(parse_index(key),
                                            registry.arity_table())) {
        throw ValidationError("column key '" + key + "' fails arity bounds");
      }
      if (!col_owner_.emplace(key, std::make_pair(i, k)).second) {
        throw ValidationError("column key '" + key + "' assigned twice");
      }
    }
  }
  if (!self_found) {
    throw ValidationError("missing Self: no neuron named '" +
                          spec_.self_neuron + "'");
  }

  // Initial network matrix from the finite triplet list.
  if (spec_.mode == Mode::Lightweight) {
    DenseMatrix w(spec_.m, spec_.n);
    for (const auto& [r, c, val] : spec_.initial_matrix) {
      w.at(decimal_key(r, spec_.m, "row"), decimal_key(c, spec_.n, "column")) =
          val;
    }
    w_ = std::move(w);
  } else {
    FDMatrix w;
    for (const auto& [r, c, val] : spec_.initial_matrix) {
      parse_index(r);  // keys must belong to the index language
      parse_index(c);
      w.terms.push_back({fv_scale(val, FDVector::unit(r)), FDVector::unit(c)});
    }
    w_ = std::move(w);
  }

  TransformContext ctx0{spec_.mode, spec_.m, spec_.n, 0};
  for (const auto& decl : spec_.neurons) {
    const NeuronType& t = registry.get(decl.type);
    NeuronBuildContext bctx;
    bctx.mode = spec_.mode;
    bctx.m = spec_.m;
    bctx.n = spec_.n;
    bctx.name = decl.name;
    bctx.params = decl.params;
    if (auto it = spec_.inputs.find(decl.name); it != spec_.inputs.end()) {
      bctx.sequence = &it->second;
    }
    Instance inst;
    inst.decl = decl;
    inst.type = t;
    inst.transform = t.make(bctx);
    auto init = inst.transform->initial_outputs(ctx0);
    for (int k = 0; k < int(decl.cols.size()); ++k) {
      if (k < int(init.size())) outputs_[decl.cols[k]] = init[k];
    }
    neurons_.push_back(std::move(inst));
  }
  for (const auto& [col, value] : spec_.initial_outputs) {
    outputs_[col] = value;
  }

  // The designated Self output column carries the network matrix. An
  // initial-output override for it replaces the triplet matrix.
  const std::string& self_col = neurons_[self_index_].decl.cols[0];
  if (auto it = outputs_.find(self_col); it != outputs_.end() &&
      spec_.initial_outputs.count(self_col)) {
    w_ = it->second;
  }
  if (!v_finite_support(w_)) {
    throw ValidationError("initial network matrix has infinite support");
  }
  outputs_[self_col] = w_;
}

StreamValue Network::zero_value() const {
  if (spec_.mode == Mode::Lightweight) {
    return DenseMatrix(spec_.m, spec_.n);
  }
  return FDMatrix::zero();
}

std::vector<std::tuple<std::string, std::string, double>>
Network::w_entries() const {
  std::vector<std::tuple<std::string, std::string, double>> out;
  if (const auto* d = std::get_if<DenseMatrix>(&w_)) {
    for (int i = 0; i < d->rows; ++i) {
      for (int j = 0; j < d->cols; ++j) {
        if (d->at(i, j) != 0.0) {
          out.emplace_back(std::to_string(i), std::to_string(j), d->at(i, j));
        }
      }
    }
  } else {
    const FDMatrix& f = std::get<FDMatrix>(w_);
    for (const auto& [r, c] : support(f)) {
      out.emplace_back(r, c, fd_value(f, r, c));
    }
  }
  return out;
}

std::vector<std::size_t> Network::active_indices() const {
  std::set<std::string> rows, cols;
  for (const auto& [r, c, _] : w_entries()) {
    rows.insert(r);
    cols.insert(c);
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < neurons_.size(); ++i) {
    bool hit = i == self_index_;
    for (const auto& r : neurons_[i].decl.rows) hit = hit || rows.count(r);
    for (const auto& c : neurons_[i].decl.cols) hit = hit || cols.count(c);
    if (hit) active.push_back(i);
  }
  return active;
}

void Network::down_movement() {
  if (phase_ != Phase::BeforeDown) {
    throw PhaseError("down movement requires BeforeDown phase");
  }
  std::map<std::string, std::vector<std::pair<std::string, double>>> by_row;
  for (const auto& [r, c, val] : w_entries()) by_row[r].push_back({c, val});

  inputs_.clear();
  for (std::size_t idx : active_indices()) {
    for (const auto& row : neurons_[idx].decl.rows) {
      StreamValue acc = zero_value();
      if (auto it = by_row.find(row); it != by_row.end()) {
        for (const auto& [col, weight] : it->second) {
          // Columns with no emitting neuron contribute the zero matrix.
          if (auto out = outputs_.find(col); out != outputs_.end()) {
            acc = v_add(acc, v_scale(weight, out->second));
          }
        }
      }
      inputs_[row] = std::move(acc);
    }
  }
  phase_ = Phase::AfterDown;
}

void Network::up_movement() {
  if (phase_ != Phase::AfterDown) {
    throw PhaseError("up movement requires a completed down movement");
  }
  TransformContext ctx{spec_.mode, spec_.m, spec_.n, t_ + 1};
  auto next_outputs = outputs_;  // dormant neurons hold their last element

  for (std::size_t idx : active_indices()) {
    if (idx == self_index_) continue;
    Instance& inst = neurons_[idx];
    std::vector<StreamValue> ins;
    ins.reserve(inst.decl.rows.size());
    for (const auto& row : inst.decl.rows) ins.push_back(input(row));
    auto outs = inst.transform->step(ins, ctx);
    if (int(outs.size()) != inst.type.output_arity) {
      throw ValidationError("neuron '" + inst.decl.name +
                            "' emitted a wrong number of outputs");
    }
    for (int k = 0; k < int(outs.size()); ++k) {
      next_outputs[inst.decl.cols[k]] = std::move(outs[k]);
    }
  }

  // Self: new output := x + dx.
  const Instance& self = neurons_[self_index_];
  StreamValue dx = input(self.decl.rows[1]);
  StreamValue x;
  if (spec_.self_mode == SelfMode::Literal) {
    x = input(self.decl.rows[0]);
  } else {
    if (!x_row_is_identity()) {
      throw ConstraintViolated(
          "optimized Self requires x-row = {1 at Self's output}");
    }
    x = w_;
  }
  StreamValue next_w = v_add(x, dx);
  apply_enforced_rows(next_w);
  if (!v_finite_support(next_w)) {
    if (spec_.overflow == OverflowPolicy::Halt) {
      throw OverflowHalt("network matrix lost finite support at t=" +
                         std::to_string(t_ + 1));
    }
    next_w = zero_value();  // divergence convention: reset to all zeros
  }
  w_ = std::move(next_w);
  next_outputs[self.decl.cols[0]] = w_;
  outputs_ = std::move(next_outputs);
  ++t_;
  phase_ = Phase::BeforeDown;
}

Trace Network::run(int steps, const std::vector<WatchKey>& watch) {
  Trace trace;
  trace.reserve(std::size_t(std::max(steps, 0)));
  for (int s = 0; s < steps; ++s) {
    down_movement();
    up_movement();
    TraceRecord rec;
    rec.t = t_;
    for (const auto& wk : watch) {
      if (wk.kind == WatchKey::Kind::Cell) {
        rec.watched.emplace_back(wk.raw, v_cell(w_, wk.row, wk.col));
      } else {
        rec.watched.emplace_back(wk.raw, output(wk.out_key));
      }
    }
    trace.push_back(std::move(rec));
  }
  return trace;
}

StreamValue Network::input(const std::string& row_key) const {
  auto it = inputs_.find(row_key);
  return it == inputs_.end() ? zero_value() : it->second;
}

StreamValue Network::output(const std::string& col_key) const {
  auto it = outputs_.find(col_key);
  return it == outputs_.end() ? zero_value() : it->second;
}

std::set<std::string> Network::active_neurons() const {
  std::set<std::string> names;
  for (std::size_t idx : active_indices()) {
    names.insert(neurons_[idx].decl.name);
  }
  return names;
}

bool Network::x_row_is_identity() const {
  const NeuronDecl& self = neurons_[self_index_].decl;
  const std::string& x_row = self.rows[0];
  const std::string& self_col = self.cols[0];
  if (const auto* d = std::get_if<DenseMatrix>(&w_)) {
    int i = std::stoi(x_row);
    int jc = std::stoi(self_col);
    for (int j = 0; j < d->cols; ++j) {
      if (d->at(i, j) != (j == jc ? 1.0 : 0.0)) return false;
    }
    return true;
  }
  const FDMatrix& f = std::get<FDMatrix>(w_);
  auto cc = col_class_reps({&f});
  cc.push_back(self_col);
  for (const auto& c : cc) {
    if (fd_value(f, x_row, c) != (c == self_col ? 1.0 : 0.0)) return false;
  }
  return true;
}

void Network::apply_enforced_rows(StreamValue& w) const {
  for (const auto& [row, cols] : spec_.enforced_rows) {
    if (auto* d = std::get_if<DenseMatrix>(&w)) {
      int i = decimal_key(row, spec_.m, "enforced row");
      for (int j = 0; j < d->cols; ++j) d->at(i, j) = 0.0;
      for (const auto& [col, val] : cols) {
        d->at(i, decimal_key(col, spec_.n, "enforced column")) = val;
      }
    } else {
      FDMatrix& f = std::get<FDMatrix>(w);
      FDVector current = row_combine(FDVector::unit(row), f);
      FDVector desired;
      for (const auto& [col, val] : cols) desired.set(col, val);
      f.terms.push_back({fv_scale(-1.0, FDVector::unit(row)), current});
      f.terms.push_back({FDVector::unit(row), desired});
    }
  }
}

std::set<std::string> active_set(const StreamValue& w,
                                 const NetworkSpec& spec,
                                 const TypeRegistry& registry) {
  NetworkSpec s = spec;
  resolve_keys(s, registry);
  std::set<std::string> rows, cols;
  if (const auto* d = std::get_if<DenseMatrix>(&w)) {
    for (int i = 0; i < d->rows; ++i) {
      for (int j = 0; j < d->cols; ++j) {
        if (d->at(i, j) != 0.0) {
          rows.insert(std::to_string(i));
          cols.insert(std::to_string(j));
        }
      }
    }
  } else {
    for (const auto& [r, c] : support(std::get<FDMatrix>(w))) {
      rows.insert(r);
      cols.insert(c);
    }
  }
  std::set<std::string> names;
  for (const auto& decl : s.neurons) {
    bool hit = decl.name == s.self_neuron;
    for (const auto& r : decl.rows) hit = hit || rows.count(r);
    for (const auto& c : decl.cols) hit = hit || cols.count(c);
    if (hit) names.insert(decl.name);
  }
  return names;
}

bool self_equivalence_check(const NetworkSpec& spec,
                            const TypeRegistry& registry, int steps,
                            const std::vector<WatchKey>& watch) {
  NetworkSpec literal = spec;
  literal.self_mode = SelfMode::Literal;
  NetworkSpec optimized = spec;
  optimized.self_mode = SelfMode::Optimized;

  Network a(literal, registry);
  Network b(optimized, registry);
  if (!a.x_row_is_identity()) {
    throw ConstraintViolated("x-row constraint violated at t=0");
  }
  Trace ta, tb;
  for (int s = 0; s < steps; ++s) {
    auto ra = a.run(1, watch);
    auto rb = b.run(1, watch);
    if (!a.x_row_is_identity() || !b.x_row_is_identity()) {
      throw ConstraintViolated("x-row constraint violated at t=" +
                               std::to_string(a.time()));
    }
    ta.insert(ta.end(), ra.begin(), ra.end());
    tb.insert(tb.end(), rb.begin(), rb.end());
  }
  return trace_exact_equal(ta, tb);
}

}  // namespace dmm
