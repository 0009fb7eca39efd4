#include "chaoslab/nls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "chaoslab/errors.hpp"
#include "chaoslab/integrators.hpp"
#include "chaoslab/spectra.hpp"

namespace chaoslab::nls {

namespace {

constexpr complex I_unit{0.0, 1.0};

int wrap(int n, int N) { return ((n % N) + N) % N; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// 2 x 2 real block of z -> c z.
void put_complex_block(Eigen::MatrixXd& J, int N, int row, int col, complex c) {
  J(row, col) += c.real();
  J(row, col + N) -= c.imag();
  J(row + N, col) += c.imag();
  J(row + N, col + N) += c.real();
}

int count_unstable(const std::vector<complex>& ev, double tol) {
  return static_cast<int>(
      std::count_if(ev.begin(), ev.end(), [tol](complex l) { return l.real() > tol; }));
}

}  // namespace

std::pair<double, double> omega_window(int N) {
  if (N < 3) throw PreconditionError("omega_window: N must be >= 3");
  const double pi = std::numbers::pi;
  if (N == 3) return {3.0 * std::tan(pi / 3.0), std::numeric_limits<double>::infinity()};
  return {N * std::tan(pi / N), N * std::tan(2.0 * pi / N)};
}

void validate(const Params& p, bool require_window) {
  if (p.N < 3) throw PreconditionError("nls: N must be >= 3");
  if (!(p.alpha > 0.0)) throw PreconditionError("nls: alpha must be > 0");
  if (!(p.beta > 0.0)) throw PreconditionError("nls: beta must be > 0");
  if (!(p.epsilon >= 0.0)) throw PreconditionError("nls: epsilon must be >= 0");
  if (!std::isfinite(p.omega)) throw PreconditionError("nls: omega must be finite");
  if (require_window) {
    const auto [lo, hi] = omega_window(p.N);
    if (!(p.omega > lo && p.omega < hi))
      throw PreconditionError("nls: omega must satisfy N tan(pi/N) < omega < N tan(2 pi/N), i.e. " +
                              fmt(lo) + " < omega < " + fmt(hi) + " for N = " +
                              std::to_string(p.N));
  }
}

LatticeState LatticeState::even(std::vector<complex> values, double tol) {
  LatticeState s;
  s.q = std::move(values);
  if (s.q.size() < 3) throw PreconditionError("LatticeState: need at least 3 sites");
  if (s.evenness_defect() > tol)
    throw PreconditionError("LatticeState: values violate q_{N-n} = q_n (defect " +
                            fmt(s.evenness_defect()) + ")");
  return s;
}

LatticeState LatticeState::uniform(int N, complex value) {
  LatticeState s(N);
  std::fill(s.q.begin(), s.q.end(), value);
  return s;
}

double LatticeState::evenness_defect() const {
  const int N = size();
  double d = 0.0;
  for (int n = 1; n < N; ++n) d = std::max(d, std::abs(q[n] - q[N - n]));
  return d;
}

double LatticeState::max_abs() const {
  double m = 0.0;
  for (complex z : q) m = std::max(m, std::abs(z));
  return m;
}

LatticeState& LatticeState::operator+=(const LatticeState& o) {
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += o.q[i];
  return *this;
}

LatticeState& LatticeState::operator*=(double s) {
  for (complex& z : q) z *= s;
  return *this;
}

LatticeState pdnls_rhs(const LatticeState& s, const Params& p) {
  const int N = s.size();
  const double ih2 = 1.0 / (p.h() * p.h());
  LatticeState d(N);
  for (int n = 0; n < N; ++n) {
    const complex qn = s.q[n];
    // the neighbour sum first keeps even inputs exactly even
    const complex side = s.q[wrap(n + 1, N)] + s.q[wrap(n - 1, N)];
    const complex lap = ih2 * (side - 2.0 * qn);
    const complex g = lap + std::norm(qn) * side - 2.0 * p.omega * p.omega * qn +
                      I_unit * p.epsilon * (-p.alpha * qn + lap + p.beta);
    d.q[n] = -I_unit * g;
  }
  return d;
}

Eigen::MatrixXd pdnls_jacobian(const LatticeState& s, const Params& p) {
  const int N = s.size();
  const double ih2 = 1.0 / (p.h() * p.h());
  const double w2 = p.omega * p.omega;
  const double e = p.epsilon;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (int n = 0; n < N; ++n) {
    const complex qn = s.q[n];
    const int up = wrap(n + 1, N), dn = wrap(n - 1, N);
    const complex side = s.q[up] + s.q[dn];
    // dq_n/dt = -i [(1 + i e) L q_n + |q_n|^2 side - 2 w^2 q_n - i e a q_n] + e b
    const complex lap_coef = -I_unit * (1.0 + I_unit * e) * ih2;
    const complex nb_coef = lap_coef - I_unit * std::norm(qn);
    put_complex_block(J, N, n, up, nb_coef);
    put_complex_block(J, N, n, dn, nb_coef);
    put_complex_block(J, N, n, n, -2.0 * lap_coef - I_unit * (-2.0 * w2) - e * p.alpha);
    // |q_n|^2 = x^2 + y^2
    const complex ddx = -I_unit * 2.0 * qn.real() * side;
    const complex ddy = -I_unit * 2.0 * qn.imag() * side;
    J(n, n) += ddx.real();
    J(n + N, n) += ddx.imag();
    J(n, n + N) += ddy.real();
    J(n + N, n + N) += ddy.imag();
  }
  return J;
}

Eigen::MatrixXd even_basis(int N) {
  const int M = N / 2;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * N, 2 * (M + 1));
  for (int m = 0; m <= M; ++m) {
    const int partner = wrap(N - m, N);
    for (int part = 0; part < 2; ++part) {
      const int col = part * (M + 1) + m;
      if (partner == m) {
        B(part * N + m, col) = 1.0;
      } else {
        B(part * N + m, col) = std::sqrt(0.5);
        B(part * N + partner, col) = std::sqrt(0.5);
      }
    }
  }
  return B;
}

LatticeState half_period_translate(const LatticeState& s) {
  const int N = s.size();
  if (N % 2 != 0) throw PreconditionError("half_period_translate: N must be even");
  LatticeState out(N);
  for (int n = 0; n < N; ++n) out.q[n] = s.q[wrap(n + N / 2, N)];
  return out;
}

double mass(const LatticeState& s) {
  double m = 0.0;
  for (complex z : s.q) m += std::norm(z);
  return m / s.size();
}

SaddleInfo continuum_saddle(const ContinuumParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.omega > 0.0))
    throw PreconditionError("continuum_saddle: alpha, beta and omega must be positive");
  if (!(p.epsilon >= 0.0)) throw PreconditionError("continuum_saddle: epsilon must be >= 0");
  const double disc = p.beta * p.beta - p.alpha * p.alpha * p.omega * p.omega;
  if (!(disc > 0.0))
    throw DomainError("continuum_saddle: requires alpha * omega < beta (got " +
                      fmt(p.alpha * p.omega) + " >= " + fmt(p.beta) + ")");
  SaddleInfo s;
  s.I = p.omega * p.omega - p.epsilon * std::sqrt(disc) / (2.0 * p.omega);
  if (!(s.I > 0.0)) throw DomainError("continuum_saddle: I <= 0; epsilon too large");
  const double c = p.alpha * std::sqrt(s.I) / p.beta;
  if (!(c > 0.0 && c < 1.0)) throw DomainError("continuum_saddle: cos(theta) outside (0,1)");
  s.theta = std::acos(c);
  return s;
}

std::pair<complex, complex> continuum_eigenvalues(int n, const ContinuumParams& p, double I,
                                                  Variant variant) {
  if (n < 0) throw PreconditionError("continuum_eigenvalues: n must be >= 0");
  const double n2 = static_cast<double>(n) * n;
  const double xi = (variant == Variant::Regular && n > p.n_cut) ? 8.0 / n2 : 1.0;
  const double w2 = p.omega * p.omega;
  const double prod = (n2 / 2.0 + w2 - I) * (3.0 * I - w2 - n2 / 2.0);
  const complex root = prod >= 0.0 ? complex(std::sqrt(prod), 0.0) : complex(0.0, std::sqrt(-prod));
  const double damping = -p.epsilon * (p.alpha + xi * n2);
  return {damping + 2.0 * root, damping - 2.0 * root};
}

std::vector<TaggedEigenvalue> continuum_spectrum(const ContinuumParams& p, double I, int n_max,
                                                 Variant variant) {
  std::vector<TaggedEigenvalue> out;
  for (int n = 0; n <= n_max; ++n) {
    const auto [plus, minus] = continuum_eigenvalues(n, p, I, variant);
    out.push_back({n, +1, plus});
    out.push_back({n, -1, minus});
  }
  return out;
}

SilnikovReport silnikov_check(const std::vector<TaggedEigenvalue>& eigs) {
  SilnikovReport r;
  const TaggedEigenvalue* l0 = nullptr;
  const TaggedEigenvalue* l1 = nullptr;
  const TaggedEigenvalue* l2 = nullptr;
  for (const auto& e : eigs) {
    if (e.value.real() > 0.0) ++r.positive_count;
    if (e.branch > 0 && e.mode == 0) l0 = &e;
    if (e.branch > 0 && e.mode == 1) l1 = &e;
    if (e.branch > 0 && e.mode == 2) l2 = &e;
  }
  r.two_positive = r.positive_count == 2;
  if (l2 && l2->value.real() < 0.0) {
    const double a2 = std::abs(l2->value.real());
    r.lambda2_minimal = std::all_of(eigs.begin(), eigs.end(), [a2](const TaggedEigenvalue& e) {
      return !(e.value.real() < 0.0) || a2 <= std::abs(e.value.real()) * (1.0 + 1e-12);
    });
    r.lambda2_below_lambda0 = l0 && l0->value.real() > 0.0 && a2 < l0->value.real();
  }
  r.lambda0_below_lambda1 = l0 && l1 && l0->value.real() > 0.0 &&
                            l0->value.real() < l1->value.real();
  return r;
}

double second_measurement(double alpha, double omega, double delta_gamma) {
  const double x = delta_gamma;
  if (std::abs(x) < 1e-4) {
    // x / (2 sin(x/2)) = 1 + x^2/24 + 7 x^4/5760 + O(x^6)
    const double x2 = x * x;
    return alpha * omega * (1.0 + x2 / 24.0 + 7.0 * x2 * x2 / 5760.0);
  }
  const double s = std::sin(x / 2.0);
  const double k = std::round(x / (2.0 * std::numbers::pi));
  if (k != 0.0 && std::abs(x - 2.0 * std::numbers::pi * k) < 1e-12 * std::max(1.0, std::abs(x)))
    throw DomainError("second_measurement: pole at delta_gamma = 2 pi k (k = " + fmt(k) + ")");
  return alpha * omega * x / (2.0 * s);
}

DiscreteSaddle discrete_saddle(const Params& p, double unstable_tol) {
  validate(p, false);
  if (!(p.alpha * p.omega < p.beta))
    throw DomainError("discrete_saddle: requires alpha * omega < beta");
  const double w2 = p.omega * p.omega;
  auto F = [&](complex z) {
    return 2.0 * (std::norm(z) - w2) * z + I_unit * p.epsilon * (p.beta - p.alpha * z);
  };
  const double scale = std::max(1.0, p.omega * w2);

  // On the branch cos(theta) = a sqrt(I) / b, sin(theta) > 0 the fixed point
  // equation reduces to g(s) = 0 for s = sqrt(I) < w. Newton in the plane is
  // degenerate along the e = 0 circle and can land on the conjugate root.
  auto g = [&](double s) {
    return 2.0 * (s * s - w2) * s + p.epsilon * std::sqrt(p.beta * p.beta - p.alpha * p.alpha * s * s);
  };
  double lo = 0.5 * p.omega, hi = p.omega;
  if (!(g(lo) < 0.0))
    throw DomainError("discrete_saddle: epsilon too large for the saddle branch near |Q| = omega");
  for (int it = 0; it < 200 && hi - lo > 4e-16 * p.omega; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double sq = 0.5 * (lo + hi);
  complex Q = std::polar(sq, std::acos(p.alpha * sq / p.beta));

  // polish in the plane
  for (int it = 0; it < 3 && std::abs(F(Q)) > 1e-14 * scale; ++it) {
    const double x = Q.real(), y = Q.imag();
    const double r2 = x * x + y * y - w2;
    Eigen::Matrix2d Jf;
    Jf << 2.0 * r2 + 4.0 * x * x, 4.0 * x * y + p.epsilon * p.alpha,
          4.0 * x * y - p.epsilon * p.alpha, 2.0 * r2 + 4.0 * y * y;
    const complex f = F(Q);
    const Eigen::Vector2d step = Jf.fullPivLu().solve(Eigen::Vector2d(f.real(), f.imag()));
    const complex next = Q - complex(step(0), step(1));
    if (!(std::abs(F(next)) < std::abs(f))) break;
    Q = next;
  }
  if (!(std::abs(F(Q)) <= 1e-12 * scale))
    throw NumericalFailure("discrete_saddle: fixed point residual too large at Q = (" + fmt(Q.real()) +
                           ", " + fmt(Q.imag()) + ")");

  DiscreteSaddle s;
  s.Q = Q;
  s.state = LatticeState::uniform(p.N, Q);
  s.jacobian = pdnls_jacobian(s.state, p);
  s.eigenvalues = eigenvalues(Eigen::MatrixXcd(s.jacobian.cast<complex>()));
  const Eigen::MatrixXd B = even_basis(p.N);
  const Eigen::MatrixXd reduced = B.transpose() * s.jacobian * B;
  s.even_eigenvalues = eigenvalues(Eigen::MatrixXcd(reduced.cast<complex>()));
  s.unstable_full = count_unstable(s.eigenvalues, unstable_tol);
  s.unstable_even = count_unstable(s.even_eigenvalues, unstable_tol);
  return s;
}

Trajectory simulate(const LatticeState& s0, const Params& p, double dt, long steps,
                    long sample_every) {
  validate(p, false);
  if (s0.size() != p.N) throw PreconditionError("simulate: state size differs from N");
  if (!(dt > 0.0)) throw PreconditionError("simulate: dt must be positive");
  if (dt > 0.1 * p.h() * p.h())
    throw PreconditionError("simulate: dt must satisfy dt <= 0.1 h^2 = " + fmt(0.1 * p.h() * p.h()));
  if (sample_every < 1) throw PreconditionError("simulate: sample_every must be >= 1");
  Trajectory tr;
  const auto record = [&tr](double t, const LatticeState& s) {
    tr.t.push_back(t);
    tr.states.push_back(s);
    tr.mass.push_back(mass(s));
  };
  record(0.0, s0);
  LatticeState x = s0;
  const auto rhs = [&p](const LatticeState& y) { return pdnls_rhs(y, p); };
  for (long i = 1; i <= steps; ++i) {
    x = rk4_step(x, dt, rhs);
    if (!std::isfinite(x.max_abs()))
      throw NumericalFailure("simulate: blow-up at step " + std::to_string(i));
    if (i % sample_every == 0) record(static_cast<double>(i) * dt, x);
  }
  return tr;
}

char classify_profile(const LatticeState& s, const EncodeOptions& o) {
  const int N = s.size();
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (complex z : s.q) {
    hi = std::max(hi, std::abs(z));
    lo = std::min(lo, std::abs(z));
  }
  if (!(hi > 0.0) || (hi - lo) < o.flat_tol * hi) return '?';
  bool center = false, wing = false, neither = false;
  for (int n = 0; n < N; ++n) {
    if (std::abs(s.q[n]) < hi * (1.0 - o.tie_tol)) continue;
    // strictly within N/4, in integer arithmetic: 4 |n - N/2| < N
    const bool c = 2 * std::abs(2 * n - N) < N;
    const bool w = 4 * std::min(n, N - n) < N;
    if (c) center = true;
    else if (w) wing = true;
    else neither = true;
  }
  if (neither || (center && wing)) return '?';
  return center ? 'C' : 'W';
}

int Encoding::alternations() const {
  int a = 0;
  for (std::size_t i = 1; i < compressed.size(); ++i)
    if (compressed[i] != compressed[i - 1]) ++a;
  return a;
}

Encoding center_wing_encode(const std::vector<LatticeState>& samples, const EncodeOptions& o) {
  Encoding e;
  e.raw.reserve(samples.size());
  char run_symbol = '?';
  int run_length = 0;
  for (const auto& s : samples) {
    const char c = classify_profile(s, o);
    e.raw.push_back(c);
    if (c == '?') {
      run_symbol = '?';
      run_length = 0;
      continue;
    }
    if (c == run_symbol) {
      ++run_length;
    } else {
      run_symbol = c;
      run_length = 1;
    }
    if (run_length == o.persistence && (e.compressed.empty() || e.compressed.back() != c))
      e.compressed.push_back(c);
  }
  return e;
}

std::string swap_symbols(std::string s) {
  for (char& c : s) c = c == 'C' ? 'W' : c == 'W' ? 'C' : c;
  return s;
}

}  // namespace chaoslab::nls
