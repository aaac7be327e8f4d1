#include "dmm/value.hpp"

namespace dmm {
namespace {

[[noreturn]] void mode_mismatch() {
  throw ValidationError("mixed lightweight/countable stream values");
}

}  // namespace

StreamValue v_add(const StreamValue& x, const StreamValue& y) {
  if (auto* dx = std::get_if<DenseMatrix>(&x)) {
    auto* dy = std::get_if<DenseMatrix>(&y);
    if (!dy) mode_mismatch();
    return d_add(*dx, *dy);
  }
  auto* fy = std::get_if<FDMatrix>(&y);
  if (!fy) mode_mismatch();
  return fd_add(std::get<FDMatrix>(x), *fy);
}

StreamValue v_scale(double c, const StreamValue& x) {
  if (auto* d = std::get_if<DenseMatrix>(&x)) return d_scale(c, *d);
  return fd_scale(c, std::get<FDMatrix>(x));
}

StreamValue v_hadamard(const StreamValue& x, const StreamValue& y) {
  if (auto* dx = std::get_if<DenseMatrix>(&x)) {
    auto* dy = std::get_if<DenseMatrix>(&y);
    if (!dy) mode_mismatch();
    return d_hadamard(*dx, *dy);
  }
  auto* fy = std::get_if<FDMatrix>(&y);
  if (!fy) mode_mismatch();
  return hadamard(std::get<FDMatrix>(x), *fy);
}

StreamValue v_pointwise(const std::function<double(double)>& f,
                        const StreamValue& x) {
  if (auto* d = std::get_if<DenseMatrix>(&x)) return d_pointwise(f, *d);
  const FDMatrix& a = std::get<FDMatrix>(x);
  auto rr = row_class_reps({&a});
  auto cc = col_class_reps({&a});
  double c0 = fd_value(a, rr.front(), cc.front());
  for (const auto& r : rr) {
    for (const auto& c : cc) {
      if (fd_value(a, r, c) != c0) {
        throw UnsupportedInCountableMode(
            "entrywise nonlinearity on a non-constant countable matrix");
      }
    }
  }
  return lift_scalar(f(c0));
}

bool v_exact_equal(const StreamValue& x, const StreamValue& y) {
  if (auto* dx = std::get_if<DenseMatrix>(&x)) {
    auto* dy = std::get_if<DenseMatrix>(&y);
    return dy && d_bit_equal(*dx, *dy);
  }
  auto* fy = std::get_if<FDMatrix>(&y);
  return fy && semantically_equal(std::get<FDMatrix>(x), *fy);
}

bool v_finite_support(const StreamValue& x) {
  if (std::holds_alternative<DenseMatrix>(x)) return true;
  return finite_support(std::get<FDMatrix>(x));
}

double v_cell(const StreamValue& x, const std::string& row,
              const std::string& col) {
  if (auto* d = std::get_if<DenseMatrix>(&x)) {
    int i = std::stoi(row);
    int j = std::stoi(col);
    if (i < 0 || i >= d->rows || j < 0 || j >= d->cols) {
      throw ValidationError("cell (" + row + "," + col + ") out of range");
    }
    return d->at(i, j);
  }
  return fd_value(std::get<FDMatrix>(x), row, col);
}

Mode v_mode(const StreamValue& x) {
  return std::holds_alternative<DenseMatrix>(x) ? Mode::Lightweight
                                                : Mode::Countable;
}

}  // namespace dmm
