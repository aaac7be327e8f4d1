#include "dmm/dense_matrix.hpp"

#include <bit>
#include <cstdint>

namespace dmm {
namespace {

void require_same_shape(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw ValidationError("dense matrix shape mismatch");
  }
}

}  // namespace

DenseMatrix d_add(const DenseMatrix& x, const DenseMatrix& y) {
  require_same_shape(x, y);
  DenseMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

DenseMatrix d_scale(double c, const DenseMatrix& x) {
  DenseMatrix r = x;
  for (double& v : r.a) v *= c;
  return r;
}

DenseMatrix d_hadamard(const DenseMatrix& x, const DenseMatrix& y) {
  require_same_shape(x, y);
  DenseMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] *= y.a[i];
  return r;
}

DenseMatrix d_pointwise(const std::function<double(double)>& f,
                        const DenseMatrix& x) {
  DenseMatrix r = x;
  for (double& v : r.a) v = f(v);
  return r;
}

bool d_bit_equal(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(x.a[i]) !=
        std::bit_cast<std::uint64_t>(y.a[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace dmm
