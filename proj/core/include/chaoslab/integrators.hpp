#pragma once

namespace chaoslab {

// Classical fourth-order Runge-Kutta step for an autonomous system. State
// must support `State + double * State`.
template <class State, class Rhs>
State rk4_step(const State& x, double dt, Rhs&& rhs) {
  const State k1 = rhs(x);
  const State k2 = rhs(State(x + (0.5 * dt) * k1));
  const State k3 = rhs(State(x + (0.5 * dt) * k2));
  const State k4 = rhs(State(x + dt * k3));
  return State(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace chaoslab
