#pragma once

// Perturbed discrete cubic NLS on an N-periodic even lattice, h = 1/N:
//
//   i dq_n/dt = h^-2 (q_{n+1} - 2 q_n + q_{n-1}) + |q_n|^2 (q_{n+1} + q_{n-1})
//               - 2 w^2 q_n + i e [ -a q_n + h^-2 (q_{n+1} - 2 q_n + q_{n-1}) + b ],
//
// together with the saddle data of the regularly perturbed continuum NLS.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace chaoslab::nls {

using complex = std::complex<double>;

struct Params {
  int N = 8;
  double omega = 4.0;
  double alpha = 1.0;
  double beta = 5.0;
  double epsilon = 0.0;

  double h() const { return 1.0 / N; }
};

/// (N tan(pi/N), N tan(2 pi/N)); the upper end is +inf for N = 3.
std::pair<double, double> omega_window(int N);

/// Throws PreconditionError naming the violated constraint: N >= 3,
/// alpha > 0, beta > 0, epsilon >= 0 and, if `require_window`, omega inside
/// omega_window(N).
void validate(const Params& p, bool require_window = true);

/// Lattice values q_0 .. q_{N-1}.
struct LatticeState {
  std::vector<complex> q;

  LatticeState() = default;
  explicit LatticeState(int N) : q(static_cast<std::size_t>(N), complex{}) {}

  /// Builds a state and checks q_{N-n} = q_n; throws PreconditionError when
  /// the evenness defect exceeds tol.
  static LatticeState even(std::vector<complex> values, double tol = 1e-12);
  static LatticeState uniform(int N, complex value);

  int size() const { return static_cast<int>(q.size()); }
  double evenness_defect() const;
  double max_abs() const;

  LatticeState& operator+=(const LatticeState& o);
  LatticeState& operator*=(double s);
  friend LatticeState operator+(LatticeState a, const LatticeState& b) { return a += b; }
  friend LatticeState operator*(double s, LatticeState a) { return a *= s; }
};

LatticeState pdnls_rhs(const LatticeState& s, const Params& p);

/// Jacobian of pdnls_rhs in the real coordinates (Re q_0..Re q_{N-1},
/// Im q_0..Im q_{N-1}).
Eigen::MatrixXd pdnls_jacobian(const LatticeState& s, const Params& p);

/// Orthonormal basis (columns) of the even subspace q_{N-n} = q_n in the same
/// real coordinates; 2 (M + 1) columns with M = floor(N / 2).
Eigen::MatrixXd even_basis(int N);

/// Half-period translate q_n -> q_{n + N/2}. Requires even N.
LatticeState half_period_translate(const LatticeState& s);

/// h * sum |q_n|^2.
double mass(const LatticeState& s);

// Continuum saddle of the regularly perturbed NLS on the invariant plane of
// spatially uniform states.

struct ContinuumParams {
  double omega = 0.8;
  double alpha = 1.0;
  double beta = 2.0;
  double epsilon = 0.0;
  int n_cut = 10;  // mollifier cutoff: xi_n = 1 for n <= n_cut, 8/n^2 beyond
};

struct TaggedEigenvalue {
  int mode = 0;
  int branch = 1;  // +1 or -1
  complex value;
};

struct SaddleInfo {
  double I = 0.0;
  double theta = 0.0;
  std::vector<TaggedEigenvalue> eigenvalues;
};

/// Leading-order I = w^2 - e sqrt(b^2 - a^2 w^2) / (2 w) and
/// theta = acos(a sqrt(I) / b). Throws DomainError when a w >= b or the
/// resulting cos(theta) leaves (0, 1).
SaddleInfo continuum_saddle(const ContinuumParams& p);

enum class Variant { Regular, Singular };

/// (lambda_n^+, lambda_n^-); the square root of a negative product is taken
/// on the positive imaginary axis.
std::pair<complex, complex> continuum_eigenvalues(int n, const ContinuumParams& p, double I,
                                                  Variant variant = Variant::Regular);

/// Tagged eigenvalues for modes 0 .. n_max.
std::vector<TaggedEigenvalue> continuum_spectrum(const ContinuumParams& p, double I, int n_max,
                                                 Variant variant = Variant::Regular);

struct SilnikovReport {
  int positive_count = 0;
  bool two_positive = false;           // exactly two eigenvalues with Re > 0
  bool lambda2_minimal = false;        // |Re l_2| smallest among Re < 0
  bool lambda2_below_lambda0 = false;  // |Re l_2| < Re l_0^+
  bool lambda0_below_lambda1 = false;  // Re l_0^+ < Re l_1^+
  bool all() const { return two_positive && lambda2_minimal && lambda2_below_lambda0; }
};

SilnikovReport silnikov_check(const std::vector<TaggedEigenvalue>& eigs);

/// Solution of the second-measurement zero condition's right-hand side,
/// a w dg / (2 sin(dg / 2)). Throws DomainError at dg = 2 pi k, k != 0.
double second_measurement(double alpha, double omega, double delta_gamma);

struct DiscreteSaddle {
  complex Q;
  LatticeState state;
  Eigen::MatrixXd jacobian;               // full 2N real dimensions
  std::vector<complex> eigenvalues;       // of the full Jacobian
  std::vector<complex> even_eigenvalues;  // restricted to the even subspace
  int unstable_full = 0;
  int unstable_even = 0;
};

/// Uniform fixed point q_n = Q with 2 (|Q|^2 - w^2) Q + i e (b - a Q) = 0 on
/// the branch Q = sqrt(I) exp(i theta), cos(theta) = a sqrt(I) / b,
/// theta in (0, pi/2), which has I < w^2. Requires a w < b.
/// Directions with Re > unstable_tol are counted as unstable.
DiscreteSaddle discrete_saddle(const Params& p, double unstable_tol = 1e-9);

struct Trajectory {
  std::vector<double> t;
  std::vector<LatticeState> states;
  std::vector<double> mass;
};

/// RK4 with dt <= 0.1 h^2, sampled every `sample_every` steps (the initial
/// state included). Throws PreconditionError on the step bound and
/// NumericalFailure on blow-up.
Trajectory simulate(const LatticeState& s0, const Params& p, double dt, long steps,
                    long sample_every = 1);

// Center/wing symbols.

struct EncodeOptions {
  double flat_tol = 1e-3;  // relative range of |q| below which a profile has no hump
  double tie_tol = 1e-12;  // relative tolerance for the argmax set
  int persistence = 5;     // samples a new basin must hold before it is emitted
};

/// 'C' when the hump sits strictly within N/4 of n = N/2, 'W' when strictly
/// within N/4 of n = 0, '?' otherwise (flat profile, hump on the basin
/// boundary, or tied maxima in both basins).
char classify_profile(const LatticeState& s, const EncodeOptions& o = {});

struct Encoding {
  std::string raw;         // one symbol per sample
  std::string compressed;  // one symbol per persistent excursion, '?' dropped
  int alternations() const;
};

Encoding center_wing_encode(const std::vector<LatticeState>& samples, const EncodeOptions& o = {});

/// C <-> W, other characters unchanged.
std::string swap_symbols(std::string s);

}  // namespace chaoslab::nls
