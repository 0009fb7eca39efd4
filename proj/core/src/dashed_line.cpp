#include "chaoslab/dashed_line.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chaoslab/errors.hpp"
#include "chaoslab/integrators.hpp"

namespace chaoslab::dashed {

double A(int n) { return coef_A(kP, kKhat + n * kP); }

double A(int m, int n) { return coef_A(kKhat + m * kP, kKhat + n * kP); }

void validate(const Params& p) {
  if (p.trunc < 6) throw PreconditionError("dashed-line: trunc must be >= 6");
  if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon))
    throw PreconditionError("dashed-line: epsilon must be finite and >= 0");
  if (!std::isfinite(p.gamma)) throw PreconditionError("dashed-line: gamma must be finite");
}

State& State::operator+=(const State& o) {
  omega_p += o.omega_p;
  for (std::size_t i = 0; i < omega.size(); ++i) omega[i] += o.omega[i];
  return *this;
}

State& State::operator*=(double s) {
  omega_p *= s;
  for (double& w : omega) w *= s;
  return *this;
}

State fixed_point(const Params& p) {
  State s(p.trunc);
  s.omega_p = p.gamma;
  return s;
}

double sup_distance(const State& a, const State& b) {
  double d = std::abs(a.omega_p - b.omega_p);
  for (std::size_t i = 0; i < a.omega.size(); ++i) d = std::max(d, std::abs(a.omega[i] - b.omega[i]));
  return d;
}

namespace {

// Coefficients for one truncation, indexed by n + trunc + 1 so that the
// neighbours n = -trunc - 1 and trunc + 1 have slots (their amplitude is 0).
struct Tables {
  int N;
  std::vector<double> eA;     // e_n A_n
  std::vector<double> eeA;    // e_n e_{n-1} A_{n-1,n}

  explicit Tables(const Params& p) : N(p.trunc) {
    eA.resize(static_cast<std::size_t>(2 * N + 3));
    eeA.resize(eA.size());
    for (int n = -N - 1; n <= N + 1; ++n) {
      eA[slot(n)] = p.eps_n(n) * A(n);
      eeA[slot(n)] = p.eps_n(n) * p.eps_n(n - 1) * A(n - 1, n);
    }
  }
  std::size_t slot(int n) const { return static_cast<std::size_t>(n + N + 1); }
};

}  // namespace

State model_rhs(const State& s, const Params& p) {
  const Tables tb(p);
  const int N = p.trunc;
  State d(N);
  auto w = [&](int n) { return (n < -N || n > N) ? 0.0 : s.at(n); };
  for (int n = -N; n <= N; ++n)
    d.at(n) = tb.eA[tb.slot(n - 1)] * s.omega_p * w(n - 1) -
              tb.eA[tb.slot(n + 1)] * s.omega_p * w(n + 1);
  double acc = 0.0;
  for (int n = -N + 1; n <= N; ++n) acc += tb.eeA[tb.slot(n)] * s.at(n - 1) * s.at(n);
  d.omega_p = -acc;
  return d;
}

Eigen::MatrixXd model_jacobian(const State& s, const Params& p) {
  const Tables tb(p);
  const int N = p.trunc;
  const int dim = 2 * N + 2;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
  auto col = [&](int n) { return n + N + 1; };
  for (int n = -N; n <= N; ++n) {
    const int row = col(n);
    if (n - 1 >= -N) {
      J(row, col(n - 1)) += tb.eA[tb.slot(n - 1)] * s.omega_p;
      J(row, 0) += tb.eA[tb.slot(n - 1)] * s.at(n - 1);
    }
    if (n + 1 <= N) {
      J(row, col(n + 1)) -= tb.eA[tb.slot(n + 1)] * s.omega_p;
      J(row, 0) -= tb.eA[tb.slot(n + 1)] * s.at(n + 1);
    }
  }
  for (int n = -N + 1; n <= N; ++n) {
    J(0, col(n - 1)) -= tb.eeA[tb.slot(n)] * s.at(n);
    J(0, col(n)) -= tb.eeA[tb.slot(n)] * s.at(n - 1);
  }
  return J;
}

std::vector<State> integrate(const State& s0, const Params& p, double dt, long steps,
                             long sample_every) {
  validate(p);
  if (!(dt > 0.0)) throw PreconditionError("dashed-line integrate: dt must be positive");
  if (sample_every < 1) throw PreconditionError("dashed-line integrate: sample_every must be >= 1");
  if (s0.trunc() != p.trunc) throw PreconditionError("dashed-line integrate: state/params trunc mismatch");
  std::vector<State> traj{s0};
  traj.reserve(static_cast<std::size_t>(steps / sample_every + 1));
  State x = s0;
  const auto rhs = [&p](const State& y) { return model_rhs(y, p); };
  for (long i = 1; i <= steps; ++i) {
    x = rk4_step(x, dt, rhs);
    bool finite = std::isfinite(x.omega_p);
    for (double w : x.omega) finite = finite && std::isfinite(w);
    if (!finite)
      throw NumericalFailure("dashed-line integrate: non-finite state at step " + std::to_string(i));
    if (i % sample_every == 0) traj.push_back(x);
  }
  return traj;
}

double kappa(int sign) {
  const double a1 = A(1), a2 = A(2);
  const double k = std::sqrt(-a1 * a2) * std::sqrt(1.0 + a2 / (4.0 * a1));
  return sign >= 0 ? k : -k;
}

HeteroclinicPoint analytic_heteroclinic(double t, const HeteroclinicParams& het, double gamma) {
  const double a1 = A(1), a2 = A(2);
  const double k = kappa(het.kappa_sign);
  HeteroclinicPoint pt;
  pt.tau = k * gamma * t + het.tau0;
  const double sech = 1.0 / std::cosh(pt.tau);
  const double lncosh = std::log(std::cosh(pt.tau));
  pt.omega_p = gamma * std::tanh(pt.tau);
  pt.r = std::sqrt(a2 / (a2 - a1)) * gamma * sech;
  pt.theta = -(a2 / (2.0 * k)) * lncosh + het.theta0;
  pt.rho = std::sqrt(-a1 / a2) * pt.r;
  const double branch = std::asin(0.5 * std::sqrt(a2 / -a1));
  pt.vartheta = (k > 0 ? -branch : std::numbers::pi + branch) - pt.theta;

  const double alpha = -a1 * gamma / k * std::sqrt(a2 / (a2 - a1));
  const double beta = -a2 / (2.0 * k);
  const double phase = beta * lncosh + het.theta0;
  const double amp = alpha * beta / (1.0 + beta * beta) * sech;
  pt.omega[0] = amp * (std::sin(phase) - std::cos(phase) / beta);
  pt.omega[1] = pt.r * std::cos(pt.theta);
  pt.omega[2] = pt.rho * std::cos(pt.vartheta);
  pt.omega[3] = pt.rho * std::sin(pt.vartheta);
  pt.omega[4] = pt.r * std::sin(pt.theta);
  pt.omega[5] = amp * (std::cos(phase) + std::sin(phase) / beta);
  return pt;
}

double time_of_tau(double tau, const HeteroclinicParams& het, double gamma) {
  if (gamma == 0.0) throw PreconditionError("time_of_tau: gamma must be nonzero");
  return (tau - het.tau0) / (kappa(het.kappa_sign) * gamma);
}

State to_state(const HeteroclinicPoint& pt, int trunc) {
  if (trunc < 6) throw PreconditionError("to_state: trunc must be >= 6");
  State s(trunc);
  s.omega_p = pt.omega_p;
  for (int n = 0; n <= 5; ++n) s.at(n) = pt.omega[static_cast<std::size_t>(n)];
  return s;
}

double orbit_residual(const HeteroclinicParams& het, double gamma,
                      const std::vector<double>& t_samples, int stencil_order, double h) {
  static const std::vector<std::vector<double>> weights{
      {1.0 / 2.0},                                   // order 2: offsets 1
      {8.0 / 12.0, -1.0 / 12.0},                     // order 4: offsets 1, 2
      {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0}};       // order 6: offsets 1, 2, 3
  if (stencil_order != 2 && stencil_order != 4 && stencil_order != 6)
    throw PreconditionError("orbit_residual: stencil order must be 2, 4 or 6");
  if (!(h > 0.0)) throw PreconditionError("orbit_residual: step must be positive");
  const auto& w = weights[static_cast<std::size_t>(stencil_order / 2 - 1)];

  const int trunc = 6;
  Params p;
  p.gamma = gamma;
  p.epsilon = 0.0;
  p.trunc = trunc;

  double worst = 0.0;
  for (double t : t_samples) {
    const State x = to_state(analytic_heteroclinic(t, het, gamma), trunc);
    State dxdt(trunc);
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double off = static_cast<double>(j + 1) * h;
      State fwd = to_state(analytic_heteroclinic(t + off, het, gamma), trunc);
      const State bwd = to_state(analytic_heteroclinic(t - off, het, gamma), trunc);
      fwd += -1.0 * bwd;
      dxdt += (w[j] / h) * fwd;
    }
    const State f = model_rhs(x, p);
    worst = std::max(worst, sup_distance(f, dxdt));
  }
  return worst;
}

}  // namespace chaoslab::dashed
