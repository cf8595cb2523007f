#pragma once

#include <functional>

#include "edlab/errors.hpp"

namespace edlab {

// Classical RK4 step for any state with +, scalar *, and is_finite().
// rhs(state) returns d(state)/dt.
template <typename State, typename Rhs>
State rk4_step(const State& y, double dt, Rhs&& rhs) {
  State k1 = rhs(y);
  State k2 = rhs(y + k1 * (dt / 2.0));
  State k3 = rhs(y + k2 * (dt / 2.0));
  State k4 = rhs(y + k3 * dt);
  State out = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
  if (!out.is_finite())
    throw NonFiniteValue("rk4_step: state became non-finite");
  return out;
}

}  // namespace edlab
