#include "dmm/neuron_library.hpp"

#include <cmath>

#include "dmm/value_json.hpp"
#include "dmm/warmus.hpp"

namespace dmm {
namespace {

StreamValue zero_for(const TransformContext& ctx) {
  if (ctx.mode == Mode::Lightweight) return DenseMatrix(ctx.m, ctx.n);
  return FDMatrix::zero();
}

class IdentityTransform : public Transform {
 public:
  std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                const TransformContext&) override {
    return {in[0]};
  }
};

class ConstTransform : public Transform {
 public:
  explicit ConstTransform(StreamValue k) : k_(std::move(k)) {}
  std::vector<StreamValue> step(const std::vector<StreamValue>&,
                                const TransformContext&) override {
    return {k_};
  }
  std::vector<StreamValue> initial_outputs(
      const TransformContext&) const override {
    return {k_};
  }

 private:
  StreamValue k_;
};

class AccTransform : public Transform {
 public:
  std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                const TransformContext&) override {
    return {v_add(in[0], in[1])};
  }
};

class HadamardTransform : public Transform {
 public:
  std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                const TransformContext&) override {
    return {v_hadamard(in[0], in[1])};
  }
};

class PointwiseTransform : public Transform {
 public:
  explicit PointwiseTransform(double (*f)(double)) : f_(f) {}
  std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                const TransformContext&) override {
    return {v_pointwise(f_, in[0])};
  }

 private:
  double (*f_)(double);
};

class InportTransform : public Transform {
 public:
  explicit InportTransform(const std::vector<StreamValue>* seq) : seq_(seq) {}
  std::vector<StreamValue> step(const std::vector<StreamValue>&,
                                const TransformContext& ctx) override {
    std::size_t idx = std::size_t(ctx.t) - 1;  // element t at step t
    if (seq_ && idx < seq_->size()) return {(*seq_)[idx]};
    return {zero_for(ctx)};
  }

 private:
  const std::vector<StreamValue>* seq_;
};

// Dense lifted-shape checks.
FDVector dense_lifted_row(const DenseMatrix& m) {
  FDVector a;
  for (int j = 0; j < m.cols; ++j) {
    for (int i = 1; i < m.rows; ++i) {
      if (m.at(i, j) != m.at(0, j)) {
        throw NotLifted("expected a column-constant (lifted row) matrix");
      }
    }
    a.set(std::to_string(j), m.at(0, j));
  }
  return a;
}

FDVector dense_lifted_col(const DenseMatrix& m) {
  FDVector b;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 1; j < m.cols; ++j) {
      if (m.at(i, j) != m.at(i, 0)) {
        throw NotLifted("expected a row-constant (lifted column) matrix");
      }
    }
    b.set(std::to_string(i), m.at(i, 0));
  }
  return b;
}

class UpdateTransform : public Transform {
 public:
  std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                const TransformContext& ctx) override {
    if (ctx.mode == Mode::Countable) {
      FDVector alpha = extract_lifted_row(std::get<FDMatrix>(in[0]));
      FDVector beta = extract_lifted_col(std::get<FDMatrix>(in[1]));
      FDVector gamma = extract_lifted_col(std::get<FDMatrix>(in[2]));
      if (!beta.finite_support() || !gamma.finite_support()) {
        throw InfiniteSupport("update neuron requires finite-support "
                              "beta and gamma");
      }
      const FDMatrix& a = std::get<FDMatrix>(in[3]);
      return {hadamard(lift_col(gamma),
                       hadamard(lift_row(alpha),
                                lift_row(row_combine(beta, a))))};
    }
    FDVector alpha = dense_lifted_row(std::get<DenseMatrix>(in[0]));
    FDVector beta = dense_lifted_col(std::get<DenseMatrix>(in[1]));
    FDVector gamma = dense_lifted_col(std::get<DenseMatrix>(in[2]));
    const DenseMatrix& a = std::get<DenseMatrix>(in[3]);
    DenseMatrix delta(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) {
      double dot = 0.0;
      for (int k = 0; k < a.rows; ++k) {
        dot += beta.value(std::to_string(k)) * a.at(k, j);
      }
      for (int i = 0; i < a.rows; ++i) {
        delta.at(i, j) = gamma.value(std::to_string(i)) *
                         alpha.value(std::to_string(j)) * dot;
      }
    }
    return {delta};
  }
};

class SubselTransform : public Transform {
 public:
  explicit SubselTransform(bool internal) : internal_(internal) {}
  std::vector<StreamValue> step(const std::vector<StreamValue>& in,
                                const TransformContext& ctx) override {
    if (ctx.mode == Mode::Countable) {
      FDVector alpha = extract_lifted_row(std::get<FDMatrix>(in[0]));
      FDVector beta = extract_lifted_col(std::get<FDMatrix>(in[1]));
      const FDMatrix& a = std::get<FDMatrix>(in[2]);
      return {internal_ ? subgraph_internal(a, alpha, beta)
                        : subgraph_overall(a, alpha, beta)};
    }
    FDVector alpha = dense_lifted_row(std::get<DenseMatrix>(in[0]));
    FDVector beta = dense_lifted_col(std::get<DenseMatrix>(in[1]));
    const DenseMatrix& a = std::get<DenseMatrix>(in[2]);
    DenseMatrix r(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i) {
      for (int j = 0; j < a.cols; ++j) {
        double av = alpha.value(std::to_string(j));
        double bv = beta.value(std::to_string(i));
        if ((av != 0.0 && av != 1.0) || (bv != 0.0 && bv != 1.0)) {
          throw NotAMask("subgraph selectors must be {0,1}-valued");
        }
        double mask = internal_ ? av * bv : std::max(av, bv);
        r.at(i, j) = mask * a.at(i, j);
      }
    }
    return {r};
  }

 private:
  bool internal_;
};

double tanh_fn(double x) { return std::tanh(x); }

}  // namespace

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

FDVector extract_lifted_row(const FDMatrix& m) {
  auto rr = row_class_reps({&m});
  auto cc = col_class_reps({&m});
  const std::string& fresh_row = rr.back();
  FDVector a(fd_value(m, fresh_row, cc.back()));
  for (const auto& c : cc) {
    double v = fd_value(m, fresh_row, c);
    for (const auto& r : rr) {
      if (fd_value(m, r, c) != v) {
        throw NotLifted("expected a column-constant (lifted row) matrix");
      }
    }
    if (c != cc.back()) a.set(c, v);
  }
  return a;
}

FDVector extract_lifted_col(const FDMatrix& m) {
  auto rr = row_class_reps({&m});
  auto cc = col_class_reps({&m});
  const std::string& fresh_col = cc.back();
  FDVector b(fd_value(m, rr.back(), fresh_col));
  for (const auto& r : rr) {
    double v = fd_value(m, r, fresh_col);
    for (const auto& c : cc) {
      if (fd_value(m, r, c) != v) {
        throw NotLifted("expected a row-constant (lifted column) matrix");
      }
    }
    if (r != rr.back()) b.set(r, v);
  }
  return b;
}

void register_builtins(TypeRegistry& registry) {
  registry.add({"identity", 1, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<IdentityTransform>();
                }});
  registry.add({"const", 0, 1, [](const NeuronBuildContext& ctx) {
                  if (!ctx.params.contains("value")) {
                    throw ValidationError("const neuron '" + ctx.name +
                                          "' needs params.value");
                  }
                  return std::make_unique<ConstTransform>(value_from_json(
                      ctx.params.at("value"), ctx.mode, ctx.m, ctx.n));
                }});
  registry.add({"acc2", 2, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<AccTransform>();
                }});
  registry.add({"self2", 2, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<AccTransform>();
                }});
  registry.add({"hadamard", 2, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<HadamardTransform>();
                }});
  registry.add({"relu", 1, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<PointwiseTransform>(&relu);
                }});
  registry.add({"sigmoid", 1, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<PointwiseTransform>(&sigmoid);
                }});
  registry.add({"tanh", 1, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<PointwiseTransform>(&tanh_fn);
                }});
  registry.add({"update4", 4, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<UpdateTransform>();
                }});
  registry.add({"subsel_overall", 3, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<SubselTransform>(false);
                }});
  registry.add({"subsel_internal", 3, 1, [](const NeuronBuildContext&) {
                  return std::make_unique<SubselTransform>(true);
                }});
  registry.add({"inport", 0, 1, [](const NeuronBuildContext& ctx) {
                  return std::make_unique<InportTransform>(ctx.sequence);
                }});
}

}  // namespace dmm
