#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dmm/dense_matrix.hpp"
#include "dmm/errors.hpp"

namespace dmm {

// Countable vector with a finite description: one default value plus a
// finite map of exceptions. Canonical form never stores an exception equal
// to the default, so the vector has finite support exactly when the
// default is zero.
struct FDVector {
  double def = 0.0;
  std::map<std::string, double> except;

  FDVector() = default;
  explicit FDVector(double d) : def(d) {}
  FDVector(double d, std::map<std::string, double> e);

  double value(const std::string& key) const;
  void set(const std::string& key, double v);  // keeps canonical form
  bool finite_support() const { return def == 0.0; }
  bool is_zero() const { return def == 0.0 && except.empty(); }

  static FDVector zero() { return FDVector(); }
  static FDVector ones() { return FDVector(1.0); }
  static FDVector unit(const std::string& key);
};

FDVector fv_add(const FDVector& x, const FDVector& y);
FDVector fv_scale(double c, const FDVector& x);
FDVector fv_mul(const FDVector& x, const FDVector& y);  // pointwise

// Countable matrix given as a finite sum of outer products u_k (x) v_k:
// A[i,j] = sum_k u_k(i) * v_k(j). The representation is not canonical;
// equality of matrices is semantic.
struct FDMatrix {
  struct Term {
    FDVector u;  // over row indices
    FDVector v;  // over column indices
  };
  std::vector<Term> terms;

  static FDMatrix zero() { return {}; }
};

double fd_value(const FDMatrix& a, const std::string& row,
                const std::string& col);

FDMatrix lift_scalar(double x);
FDMatrix lift_row(const FDVector& alpha);  // A[i,j] = alpha(j)
FDMatrix lift_col(const FDVector& beta);   // A[i,j] = beta(i)

FDMatrix fd_add(const FDMatrix& a, const FDMatrix& b);
FDMatrix fd_scale(double c, const FDMatrix& a);
FDMatrix hadamard(const FDMatrix& a, const FDMatrix& b);

// beta^T A as a vector over columns. If any inner sum has infinitely many
// nonzero addends (beta and some u_k both have nonzero defaults) the whole
// result is the zero vector; divergence is a convention, not an error.
FDVector row_combine(const FDVector& beta, const FDMatrix& a);

// True iff every entry is exactly 0 or 1, decided on the finite partition
// of indices by exception signature.
bool is_boolean_mask(const FDMatrix& a);

// Entrywise max of two {0,1} masks, via A + B - A .* B.
// Throws NotAMask when a precondition fails.
FDMatrix ewise_max(const FDMatrix& a, const FDMatrix& b);

// a_ij := a_ij + gamma_i * alpha_j * sum_k beta_k a_kj. Requires beta and
// gamma to have finite support; alpha may be infinite.
FDMatrix matrix_update(const FDMatrix& a, const FDVector& alpha,
                       const FDVector& beta, const FDVector& gamma);

// alpha marks output columns of a subgraph, beta its input rows; both must
// be {0,1}-valued.
FDMatrix subgraph_overall(const FDMatrix& a, const FDVector& alpha,
                          const FDVector& beta);
FDMatrix subgraph_internal(const FDMatrix& a, const FDVector& alpha,
                           const FDVector& beta);

bool finite_support(const FDMatrix& a);
bool semantically_equal(const FDMatrix& a, const FDMatrix& b);

DenseMatrix to_dense(const FDMatrix& a,
                     const std::vector<std::string>& row_keys,
                     const std::vector<std::string>& col_keys);

// Exact nonzero set; requires finite_support(a).
std::set<std::pair<std::string, std::string>> support(const FDMatrix& a);

// Optional cleanup pass: drops zero terms and merges terms whose row
// vectors are proportional. Semantics preserved.
FDMatrix compact(const FDMatrix& a);

// Class representatives of the row (resp. column) index partition induced
// by the terms' exception signatures: every exception key plus one fresh
// index standing for "everywhere else".
std::vector<std::string> row_class_reps(
    const std::vector<const FDMatrix*>& ms);
std::vector<std::string> col_class_reps(
    const std::vector<const FDMatrix*>& ms);

}  // namespace dmm
