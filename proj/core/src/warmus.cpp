#include "dmm/warmus.hpp"

namespace dmm {

WarmusAccumulatorState accumulator_step(WarmusAccumulatorState state,
                                        Warmus delta,
                                        bool trigger_involution) {
  if (trigger_involution) {
    if (!state.involute_only_if_pseudosegment || is_pseudosegment(state.v)) {
      state.v = w_dual(state.v);
    }
    return state;  // delta is ignored on an involutive step
  }
  if (anti_approximates_zero(delta)) {
    state.v = w_add(state.v, delta);
    return state;
  }
  switch (state.policy) {
    case AccumulatorPolicy::IgnoreNonMonotonic:
      break;
    case AccumulatorPolicy::ClampToMonotonic:
      state.v = w_add(state.v, monotone_clamp(delta));
      break;
    case AccumulatorPolicy::InvoluteOnNonMonotonic:
      if (!state.involute_only_if_pseudosegment ||
          is_pseudosegment(state.v)) {
        state.v = w_dual(state.v);
      }
      break;
  }
  return state;
}

}  // namespace dmm
