#pragma once

#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "dmm/errors.hpp"
#include "dmm/value.hpp"

namespace dmm {

struct TransformContext {
  Mode mode = Mode::Lightweight;
  int m = 0;  // lightweight matrix rows
  int n = 0;  // lightweight matrix columns
  long long t = 0;  // step being completed (first up movement has t = 1)
};

// One neuron instance's stream transform: latest input elements in, next
// output elements out. Determinism is required; any history lives in the
// instance itself, which keeps the prefix condition automatic.
class Transform {
 public:
  virtual ~Transform() = default;
  virtual std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                        const TransformContext& ctx) = 0;
  // Outputs visible before the first down movement. Empty means all-zero.
  virtual std::vector<StreamValue> initial_outputs(
      const TransformContext& ctx) const {
    (void)ctx;
    return {};
  }
};

struct NeuronBuildContext {
  Mode mode = Mode::Lightweight;
  int m = 0;
  int n = 0;
  std::string name;
  nlohmann::json params;
  const std::vector<StreamValue>* sequence = nullptr;  // inport feed
};

struct NeuronType {
  std::string name;
  int input_arity = 0;   // M >= 0
  int output_arity = 1;  // N >= 1
  std::function<std::unique_ptr<Transform>(const NeuronBuildContext&)> make;
};

class TypeRegistry {
 public:
  void add(NeuronType t);
  const NeuronType& get(const std::string& name) const;
  bool has(const std::string& name) const;
  std::map<std::string, std::pair<int, int>> arity_table() const;

 private:
  std::map<std::string, NeuronType> types_;
};

enum class OverflowPolicy { ResetToZero, Halt };
enum class SelfMode { Literal, Optimized };
enum class Phase { BeforeDown, AfterDown };

struct NeuronDecl {
  std::string name;
  std::string type;
  nlohmann::json params;  // type-specific (e.g. "value" for const)
  // Row/column keys of this neuron's inputs and outputs. Lightweight specs
  // assign decimal integer keys explicitly; in countable mode empty lists
  // are filled in from the index language (t@ik\name / t@ok%name).
  std::vector<std::string> rows;
  std::vector<std::string> cols;
};

struct NetworkSpec {
  Mode mode = Mode::Lightweight;
  int m = 0;  // lightweight dimensions
  int n = 0;
  std::vector<NeuronDecl> neurons;
  std::string self_neuron;
  SelfMode self_mode = SelfMode::Literal;
  OverflowPolicy overflow = OverflowPolicy::ResetToZero;
  // Rows of the network matrix clamped to fixed values after every up
  // movement; unspecified columns are zero.
  std::map<std::string, std::map<std::string, double>> enforced_rows;
  std::vector<std::tuple<std::string, std::string, double>> initial_matrix;
  std::map<std::string, StreamValue> initial_outputs;  // by output column key
  std::map<std::string, std::vector<StreamValue>> inputs;  // inport feeds
  int default_steps = 0;  // optional "steps" hint from spec files
};

struct WatchKey {
  enum class Kind { Cell, Output };
  Kind kind = Kind::Cell;
  std::string row;      // Cell
  std::string col;      // Cell
  std::string out_key;  // Output
  std::string raw;
};

// Grammar: "Y0[i][j]" (lightweight cell), "cell:<row>,<col>" (countable
// cell), "out:<column-key>" (whole output matrix).
WatchKey parse_watch_key(const std::string& s);

using WatchedValue = std::variant<double, StreamValue>;

struct TraceRecord {
  long long t = 0;
  std::vector<std::pair<std::string, WatchedValue>> watched;
};

using Trace = std::vector<TraceRecord>;

bool trace_exact_equal(const Trace& a, const Trace& b);

// A built network ready to run. Build validates the spec (exactly one Self
// with arity (2,1), known types, parseable keys, finite-support initial
// matrix) and throws ValidationError otherwise.
class Network {
 public:
  Network(NetworkSpec spec, const TypeRegistry& registry);

  void down_movement();
  void up_movement();
  Trace run(int steps, const std::vector<WatchKey>& watch);

  const StreamValue& matrix() const { return w_; }
  long long time() const { return t_; }
  Phase phase() const { return phase_; }
  const NetworkSpec& spec() const { return spec_; }

  // Latest stream elements, for inspection between movements.
  StreamValue input(const std::string& row_key) const;
  StreamValue output(const std::string& col_key) const;

  std::set<std::string> active_neurons() const;

  // True iff W's Self x-row is exactly {1 at Self's output column}.
  bool x_row_is_identity() const;

 private:
  struct Instance {
    NeuronDecl decl;
    NeuronType type;
    std::unique_ptr<Transform> transform;
  };

  StreamValue zero_value() const;
  std::vector<std::tuple<std::string, std::string, double>> w_entries() const;
  std::vector<std::size_t> active_indices() const;
  void apply_enforced_rows(StreamValue& w) const;

  NetworkSpec spec_;
  std::vector<Instance> neurons_;
  std::size_t self_index_ = 0;
  std::map<std::string, std::pair<std::size_t, int>> row_owner_;
  std::map<std::string, std::pair<std::size_t, int>> col_owner_;
  StreamValue w_;
  std::map<std::string, StreamValue> inputs_;
  std::map<std::string, StreamValue> outputs_;
  long long t_ = 0;
  Phase phase_ = Phase::BeforeDown;
};

// Neurons carrying at least one nonzero weight on an input row or output
// column of w, plus Self (always active).
std::set<std::string> active_set(const StreamValue& w,
                                 const NetworkSpec& spec,
                                 const TypeRegistry& registry);

// Runs the network in literal mode (Self's x materialized by the down
// movement) and in optimized mode (x held internally) and compares the
// watched traces exactly. Requires the spec to keep Self's x-row equal to
// {1 at Self's output}; throws ConstraintViolated when that breaks mid-run.
bool self_equivalence_check(const NetworkSpec& spec,
                            const TypeRegistry& registry, int steps,
                            const std::vector<WatchKey>& watch);

}  // namespace dmm
