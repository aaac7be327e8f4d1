#include "dmm/fd_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace dmm {
namespace {

// A key guaranteed to differ from every member of `used`; represents the
// infinite "everywhere else" index class.
std::string fresh_key(const std::set<std::string>& used) {
  std::string k = "__fresh";
  while (used.count(k)) k += "_";
  return k;
}

std::vector<std::string> class_reps(const std::vector<const FDMatrix*>& ms,
                                    bool rows) {
  std::set<std::string> keys;
  for (const FDMatrix* m : ms) {
    for (const auto& t : m->terms) {
      const FDVector& v = rows ? t.u : t.v;
      for (const auto& [k, _] : v.except) keys.insert(k);
    }
  }
  std::vector<std::string> reps(keys.begin(), keys.end());
  reps.push_back(fresh_key(keys));  // fresh representative is last
  return reps;
}

bool is_boolean_vector(const FDVector& v) {
  if (v.def != 0.0 && v.def != 1.0) return false;
  for (const auto& [_, x] : v.except) {
    if (x != 0.0 && x != 1.0) return false;
  }
  return true;
}

}  // namespace

FDVector::FDVector(double d, std::map<std::string, double> e) : def(d) {
  for (auto& [k, v] : e) {
    if (v != def) except.emplace(k, v);
  }
}

double FDVector::value(const std::string& key) const {
  auto it = except.find(key);
  return it == except.end() ? def : it->second;
}

void FDVector::set(const std::string& key, double v) {
  if (v == def) {
    except.erase(key);
  } else {
    except[key] = v;
  }
}

FDVector FDVector::unit(const std::string& key) {
  FDVector v;
  v.except[key] = 1.0;
  return v;
}

FDVector fv_add(const FDVector& x, const FDVector& y) {
  FDVector r(x.def + y.def);
  std::set<std::string> keys;
  for (const auto& [k, _] : x.except) keys.insert(k);
  for (const auto& [k, _] : y.except) keys.insert(k);
  for (const auto& k : keys) r.set(k, x.value(k) + y.value(k));
  return r;
}

FDVector fv_scale(double c, const FDVector& x) {
  FDVector r(c * x.def);
  for (const auto& [k, v] : x.except) r.set(k, c * v);
  return r;
}

FDVector fv_mul(const FDVector& x, const FDVector& y) {
  FDVector r(x.def * y.def);
  std::set<std::string> keys;
  for (const auto& [k, _] : x.except) keys.insert(k);
  for (const auto& [k, _] : y.except) keys.insert(k);
  for (const auto& k : keys) r.set(k, x.value(k) * y.value(k));
  return r;
}

double fd_value(const FDMatrix& a, const std::string& row,
                const std::string& col) {
  double s = 0.0;
  for (const auto& t : a.terms) s += t.u.value(row) * t.v.value(col);
  return s;
}

FDMatrix lift_scalar(double x) {
  return {{{FDVector::ones(), FDVector(x)}}};
}

FDMatrix lift_row(const FDVector& alpha) {
  return {{{FDVector::ones(), alpha}}};
}

FDMatrix lift_col(const FDVector& beta) {
  return {{{beta, FDVector::ones()}}};
}

FDMatrix fd_add(const FDMatrix& a, const FDMatrix& b) {
  FDMatrix r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r;
}

FDMatrix fd_scale(double c, const FDMatrix& a) {
  FDMatrix r = a;
  for (auto& t : r.terms) t.u = fv_scale(c, t.u);
  return r;
}

FDMatrix hadamard(const FDMatrix& a, const FDMatrix& b) {
  FDMatrix r;
  r.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      r.terms.push_back({fv_mul(ta.u, tb.u), fv_mul(ta.v, tb.v)});
    }
  }
  return r;
}

FDVector row_combine(const FDVector& beta, const FDMatrix& a) {
  // Divergence check first: a partial result is never returned.
  for (const auto& t : a.terms) {
    if (beta.def != 0.0 && t.u.def != 0.0) return FDVector::zero();
  }
  FDVector r = FDVector::zero();
  for (const auto& t : a.terms) {
    std::set<std::string> keys;
    for (const auto& [k, _] : beta.except) keys.insert(k);
    for (const auto& [k, _] : t.u.except) keys.insert(k);
    double dot = 0.0;
    for (const auto& k : keys) dot += beta.value(k) * t.u.value(k);
    r = fv_add(r, fv_scale(dot, t.v));
  }
  return r;
}

bool is_boolean_mask(const FDMatrix& a) {
  auto rr = row_class_reps({&a});
  auto cc = col_class_reps({&a});
  for (const auto& r : rr) {
    for (const auto& c : cc) {
      double v = fd_value(a, r, c);
      if (v != 0.0 && v != 1.0) return false;
    }
  }
  return true;
}

FDMatrix ewise_max(const FDMatrix& a, const FDMatrix& b) {
  if (!is_boolean_mask(a) || !is_boolean_mask(b)) {
    throw NotAMask("ewise_max operands must be {0,1} masks");
  }
  return fd_add(fd_add(a, b), fd_scale(-1.0, hadamard(a, b)));
}

FDMatrix matrix_update(const FDMatrix& a, const FDVector& alpha,
                       const FDVector& beta, const FDVector& gamma) {
  if (!beta.finite_support() || !gamma.finite_support()) {
    throw InfiniteSupport("matrix_update requires finite-support beta/gamma");
  }
  FDMatrix delta = hadamard(
      lift_col(gamma), hadamard(lift_row(alpha), lift_row(row_combine(beta, a))));
  return fd_add(a, delta);
}

FDMatrix subgraph_overall(const FDMatrix& a, const FDVector& alpha,
                          const FDVector& beta) {
  if (!is_boolean_vector(alpha) || !is_boolean_vector(beta)) {
    throw NotAMask("subgraph selectors must be {0,1}-valued");
  }
  return hadamard(ewise_max(lift_row(alpha), lift_col(beta)), a);
}

FDMatrix subgraph_internal(const FDMatrix& a, const FDVector& alpha,
                           const FDVector& beta) {
  if (!is_boolean_vector(alpha) || !is_boolean_vector(beta)) {
    throw NotAMask("subgraph selectors must be {0,1}-valued");
  }
  return hadamard(lift_row(alpha), hadamard(lift_col(beta), a));
}

bool finite_support(const FDMatrix& a) {
  auto rr = row_class_reps({&a});
  auto cc = col_class_reps({&a});
  const std::string& fresh_row = rr.back();
  const std::string& fresh_col = cc.back();
  for (const auto& r : rr) {
    if (fd_value(a, r, fresh_col) != 0.0) return false;
  }
  for (const auto& c : cc) {
    if (fd_value(a, fresh_row, c) != 0.0) return false;
  }
  return true;
}

bool semantically_equal(const FDMatrix& a, const FDMatrix& b) {
  auto rr = row_class_reps({&a, &b});
  auto cc = col_class_reps({&a, &b});
  for (const auto& r : rr) {
    for (const auto& c : cc) {
      if (fd_value(a, r, c) != fd_value(b, r, c)) return false;
    }
  }
  return true;
}

DenseMatrix to_dense(const FDMatrix& a,
                     const std::vector<std::string>& row_keys,
                     const std::vector<std::string>& col_keys) {
  DenseMatrix d(int(row_keys.size()), int(col_keys.size()));
  for (int i = 0; i < d.rows; ++i) {
    for (int j = 0; j < d.cols; ++j) {
      d.at(i, j) = fd_value(a, row_keys[i], col_keys[j]);
    }
  }
  return d;
}

std::set<std::pair<std::string, std::string>> support(const FDMatrix& a) {
  if (!finite_support(a)) {
    throw InfiniteSupport("support() requires a finite-support matrix");
  }
  auto rr = row_class_reps({&a});
  auto cc = col_class_reps({&a});
  rr.pop_back();  // drop the fresh representatives: support lives in the
  cc.pop_back();  // exception grid once finite support is established
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& r : rr) {
    for (const auto& c : cc) {
      if (fd_value(a, r, c) != 0.0) s.insert({r, c});
    }
  }
  return s;
}

FDMatrix compact(const FDMatrix& a) {
  FDMatrix r;
  for (const auto& t : a.terms) {
    if (t.u.is_zero() || t.v.is_zero()) continue;
    r.terms.push_back(t);
  }
  // Merge terms with proportional row vectors: u_j = c * u_i.
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    for (std::size_t j = i + 1; j < r.terms.size();) {
      const FDVector& ui = r.terms[i].u;
      const FDVector& uj = r.terms[j].u;
      double c = 0.0;
      bool proportional = ui.except.size() == uj.except.size();
      if (proportional) {
        // Pick the scale from any nonzero coordinate of u_i.
        if (ui.def != 0.0) {
          c = uj.def / ui.def;
        } else if (!ui.except.empty()) {
          auto it = ui.except.begin();
          c = uj.value(it->first) / it->second;
        }
        proportional = uj.def == c * ui.def;
        for (const auto& [k, v] : ui.except) {
          if (uj.value(k) != c * v) proportional = false;
        }
        for (const auto& [k, v] : uj.except) {
          if (v != c * ui.value(k)) proportional = false;
        }
      }
      if (proportional && std::isfinite(c)) {
        r.terms[i].v = fv_add(r.terms[i].v, fv_scale(c, r.terms[j].v));
        r.terms.erase(r.terms.begin() + long(j));
      } else {
        ++j;
      }
    }
    if (r.terms[i].v.is_zero()) {
      r.terms.erase(r.terms.begin() + long(i));
      --i;
    }
  }
  return r;
}

std::vector<std::string> row_class_reps(
    const std::vector<const FDMatrix*>& ms) {
  return class_reps(ms, /*rows=*/true);
}

std::vector<std::string> col_class_reps(
    const std::vector<const FDMatrix*>& ms) {
  return class_reps(ms, /*rows=*/false);
}

}  // namespace dmm
