#pragma once

#include <utility>

namespace dmm {

// Directed interval [l, u]: the pair of constraints "x >= l" and "x <= u".
// There is no ordering requirement between the endpoints; when l > u the
// value is a pseudosegment carrying contradictory constraints. Together
// with the proper intervals these form a group under addition and a 2D
// vector space over the reals.
struct Warmus {
  double l = 0.0;
  double u = 0.0;

  friend bool operator==(const Warmus&, const Warmus&) = default;
};

inline Warmus w_add(Warmus a, Warmus b) { return {a.l + b.l, a.u + b.u}; }

inline Warmus w_neg(Warmus a) { return {-a.l, -a.u}; }

// Componentwise vector-space action, including negative scalars.
inline Warmus w_scale(double c, Warmus a) { return {c * a.l, c * a.u}; }

inline bool is_pseudosegment(Warmus a) { return a.l > a.u; }

// Information order: b is at least as constrained as a.
inline bool w_leq(Warmus a, Warmus b) { return a.l <= b.l && b.u <= a.u; }

// Order-reversing involution (endpoint swap).
inline Warmus w_dual(Warmus a) { return {a.u, a.l}; }

// [0,0] <= a in the information order; exactly the admissible monotone
// additive increments.
inline bool anti_approximates_zero(Warmus a) {
  return a.u <= 0.0 && 0.0 <= a.l;
}

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

// [max(0,l), min(0,u)]; the result always anti-approximates zero.
inline Warmus monotone_clamp(Warmus a) { return {relu(a.l), -relu(-a.u)}; }

// Concatenated ReLU: first minus second recovers x.
inline std::pair<double, double> crelu(double x) {
  return {relu(x), relu(-x)};
}

// The two standard quasi-metrics on the reals; q1 + q2 = |x - y|.
inline std::pair<double, double> quasi_metrics(double x, double y) {
  return {relu(x - y), relu(y - x)};
}

enum class AccumulatorPolicy {
  IgnoreNonMonotonic,
  ClampToMonotonic,
  InvoluteOnNonMonotonic,
};

struct WarmusAccumulatorState {
  Warmus v;
  AccumulatorPolicy policy = AccumulatorPolicy::IgnoreNonMonotonic;
  bool involute_only_if_pseudosegment = true;
};

// One accumulator step. An involution request (or, under the
// InvoluteOnNonMonotonic policy, a non-monotonic delta) swaps the
// endpoints of v; every accepted additive step is monotone in w_leq.
WarmusAccumulatorState accumulator_step(WarmusAccumulatorState state,
                                        Warmus delta,
                                        bool trigger_involution = false);

}  // namespace dmm
