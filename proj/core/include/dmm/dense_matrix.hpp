#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dmm/errors.hpp"

namespace dmm {

// Finite rectangular matrix of reals; the stream value of lightweight mode.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // row-major, rows * cols entries

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}

  double& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  double at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

DenseMatrix d_add(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix d_scale(double c, const DenseMatrix& x);
DenseMatrix d_hadamard(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix d_pointwise(const std::function<double(double)>& f,
                        const DenseMatrix& x);

// Exact per-bit equality; distinguishes nothing finite but is NaN-stable,
// which keeps trace comparisons meaningful on runaway random networks.
bool d_bit_equal(const DenseMatrix& x, const DenseMatrix& y);

}  // namespace dmm
