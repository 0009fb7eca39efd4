#pragma once

// The dashed-line model: a real (cosine-transform) reduction of the Galerkin
// Euler system to the line of fixed points w_p = Gamma with p = (1,1) and
// the unstable class k_hat = (-3,-2). With w_n = w_{k_hat + n p},
//
//   d/dt w_n = e_{n-1} A_{n-1} w_p w_{n-1} - e_{n+1} A_{n+1} w_p w_{n+1},
//   d/dt w_p = - sum_n e_n e_{n-1} A_{n-1,n} w_{n-1} w_n,
//
// where A_n = A(p, k_hat + n p), A_{m,n} = A(k_hat + m p, k_hat + n p) and
// e_n = epsilon for n divisible by 5, 1 otherwise.

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "chaoslab/fourier.hpp"

namespace chaoslab::dashed {

inline constexpr WaveVector kP{1, 1};
inline constexpr WaveVector kKhat{-3, -2};

/// A_n, computed from coef_A.
double A(int n);
/// A_{m,n}, computed from coef_A.
double A(int m, int n);

struct Params {
  double gamma = 1.0;
  double epsilon = 0.0;
  int trunc = 10;  // modes n in [-trunc, trunc]

  double eps_n(int n) const { return n % 5 == 0 ? epsilon : 1.0; }
};

/// Throws PreconditionError for trunc < 6 or epsilon < 0 or non-finite values.
void validate(const Params& p);

struct State {
  double omega_p = 0.0;
  std::vector<double> omega;  // omega[n + trunc]

  State() = default;
  explicit State(int trunc) : omega(static_cast<std::size_t>(2 * trunc + 1), 0.0) {}

  int trunc() const { return static_cast<int>(omega.size() / 2); }
  double& at(int n) { return omega[static_cast<std::size_t>(n + trunc())]; }
  double at(int n) const { return omega[static_cast<std::size_t>(n + trunc())]; }

  State& operator+=(const State& o);
  State& operator*=(double s);
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator*(double s, State a) { return a *= s; }
};

/// The fixed point w_p = Gamma, w_n = 0.
State fixed_point(const Params& p);

/// Sup-norm over w_p and every w_n.
double sup_distance(const State& a, const State& b);

/// Right-hand side with every mode outside [-trunc, trunc] held at zero.
State model_rhs(const State& s, const Params& p);

/// Jacobian of model_rhs, ordered (w_p, w_{-trunc}, ..., w_{trunc}).
Eigen::MatrixXd model_jacobian(const State& s, const Params& p);

/// RK4 trajectory including the initial state, one entry every
/// `sample_every` steps. Throws NumericalFailure naming the step at which
/// the state stops being finite.
std::vector<State> integrate(const State& s0, const Params& p, double dt, long steps,
                             long sample_every = 1);

struct HeteroclinicParams {
  double tau0 = 0.0;
  double theta0 = 0.0;
  int kappa_sign = 1;
};

/// kappa = sign * sqrt(-A_1 A_2) * sqrt(1 + A_2 / (4 A_1)).
double kappa(int sign);

/// Closed-form connecting orbit of the epsilon = 0 model at time t.
struct HeteroclinicPoint {
  double tau = 0.0;
  double omega_p = 0.0;
  double r = 0.0, theta = 0.0;
  double rho = 0.0, vartheta = 0.0;
  std::array<double, 6> omega{};  // w_0 .. w_5, with w_0 and w_5 the auxiliaries
};

HeteroclinicPoint analytic_heteroclinic(double t, const HeteroclinicParams& het, double gamma);

/// The time at which the orbit reaches a given tau. Requires gamma != 0.
double time_of_tau(double tau, const HeteroclinicParams& het, double gamma);

/// Embeds an orbit point in a model state (all other modes zero).
State to_state(const HeteroclinicPoint& pt, int trunc);

/// Max over samples and components of |model_rhs(x(t)) - dx/dt|, with dx/dt
/// from a central finite difference of order 2, 4 or 6 with step h.
double orbit_residual(const HeteroclinicParams& het, double gamma,
                      const std::vector<double>& t_samples, int stencil_order = 4,
                      double h = 1e-4);

}  // namespace chaoslab::dashed
