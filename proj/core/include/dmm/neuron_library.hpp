#pragma once

#include "dmm/engine.hpp"

namespace dmm {

// Built-in neuron types, addressable from spec files by name:
//
//   identity         M=1 N=1  output = input
//   const            M=0 N=1  emits params["value"] every step
//   acc2             M=2 N=1  output = x + dx
//   self2            M=2 N=1  accumulator shape used for the Self neuron
//   hadamard         M=2 N=1  entrywise product (bilinear gate)
//   relu/sigmoid/tanh M=1 N=1 entrywise nonlinearity (dense; scalar lifts
//                             are the only countable matrices accepted)
//   update4          M=4 N=1  emits the matrix-update delta for
//                             (alpha, beta, gamma, A)
//   subsel_overall   M=3 N=1  overall subgraph connectivity of (alpha, beta, A)
//   subsel_internal  M=3 N=1  internal subgraph connectivity
//   inport           M=0 N=1  externally supplied matrix sequence; element
//                             t is emitted at the up movement of step t and
//                             the zero matrix after exhaustion
void register_builtins(TypeRegistry& registry);

// Lifted-shape extraction used by update4/subsel; exposed for tests.
// Throws NotLifted when the matrix is not column-constant (row lift) or
// row-constant (column lift) respectively.
FDVector extract_lifted_row(const FDMatrix& m);
FDVector extract_lifted_col(const FDMatrix& m);

double sigmoid(double x);

}  // namespace dmm
