#pragma once

#include <functional>
#include <string>
#include <variant>

#include "dmm/dense_matrix.hpp"
#include "dmm/fd_matrix.hpp"

namespace dmm {

enum class Mode { Lightweight, Countable };

// One element of the single stream kind: a matrix shaped to define the
// network. Lightweight networks carry dense M x N matrices, countable
// networks carry finitely-describable matrices.
using StreamValue = std::variant<DenseMatrix, FDMatrix>;

StreamValue v_add(const StreamValue& x, const StreamValue& y);
StreamValue v_scale(double c, const StreamValue& x);
StreamValue v_hadamard(const StreamValue& x, const StreamValue& y);

// Entrywise nonlinearity. Dense matrices are mapped entrywise; a countable
// matrix is accepted only when it is semantically a scalar lift (the lift
// of f of the constant is returned), since the entrywise image of a general
// FD matrix need not be finitely describable.
StreamValue v_pointwise(const std::function<double(double)>& f,
                        const StreamValue& x);

// Exact equality: bitwise for dense values, semantic for FD values.
bool v_exact_equal(const StreamValue& x, const StreamValue& y);

bool v_finite_support(const StreamValue& x);

// Network-matrix cell read; keys are decimal strings in lightweight mode.
double v_cell(const StreamValue& x, const std::string& row,
              const std::string& col);

Mode v_mode(const StreamValue& x);

}  // namespace dmm
