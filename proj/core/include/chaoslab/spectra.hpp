#pragma once

// Linearization of the Galerkin Euler system at the single-mode fixed point
// w_p = Gamma, restricted to one class k_hat + n p:
//
//   d/dt w_n = c_n w_{n-1} + d_n w_{n+1},
//   c_n = A(p, k_hat + (n-1) p) Gamma,   d_n = A(-p, k_hat + (n+1) p) conj(Gamma).

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "chaoslab/errors.hpp"
#include "chaoslab/fourier.hpp"

namespace chaoslab {

/// Newton failed to converge; carries the last iterate.
class NewtonDivergence : public NumericalFailure {
 public:
  NewtonDivergence(const std::string& what, complex last)
      : NumericalFailure(what), last_iterate(last) {}
  complex last_iterate;
};

/// Dirichlet truncation |n| <= trunc of a class. Rows follow increasing n;
/// a slot that would be the lattice origin is dropped and the couplings
/// across it are zero.
struct ClassOperator {
  ClassIndex cls;
  complex gamma;
  int trunc = 0;
  std::vector<int> n;                // retained indices
  std::vector<WaveVector> modes;     // k_hat + n p for each row
  std::vector<complex> sub_coeffs;   // c_n, zero when the n-1 neighbour is absent
  std::vector<complex> super_coeffs; // d_n, zero when the n+1 neighbour is absent
  bool degenerate = false;           // k_hat parallel to p: every coupling vanishes

  int dimension() const { return static_cast<int>(n.size()); }
  Eigen::MatrixXcd matrix() const;
};

/// Throws PreconditionError for trunc < 1 and DomainError for p = 0.
ClassOperator build_class_operator(const ClassIndex& cls, complex gamma, int trunc);

/// True when some member of the class satisfies 0 < |k| <= |p|.
bool meets_closed_disk(const ClassIndex& cls);

enum class SpectrumCase { ContinuousOnly, MixedPointSpectrum };
const char* to_string(SpectrumCase c);

struct SpectrumReport {
  std::vector<complex> eigenvalues;
  SpectrumCase spectrum_case = SpectrumCase::ContinuousOnly;
  complex b;              // -1/2 |Gamma| |p|^-2 det(p, k_hat)
  int zeta_bound = 0;     // zeta(p)
  int trunc = 0;
};

/// Dense eigenvalues of the truncation. Dimension must not exceed 2001.
SpectrumReport truncated_spectrum(const ClassOperator& op);

struct ContinuedFractionOptions {
  int depth = 0;             // recurrence half-width; 0 selects 4 * trunc
  double tolerance = 1e-13;  // on |F(lambda)|
  int max_iterations = 100;
  std::optional<int> pivot;  // row index n0; default is the member of smallest |k|
};

/// Characteristic function of the recurrence as seen from row n0,
///   F(l) = l - c_{n0} R^-_{n0-1}(l) - d_{n0} R^+_{n0+1}(l),
/// with the ratio continued fractions cut at |n| = depth. Returns F and
/// dF/dl.
std::pair<complex, complex> continued_fraction_residual(const ClassOperator& op, complex lambda,
                                                         int depth, int pivot);

/// Newton root of the continued-fraction characteristic function started
/// at `seed`. Throws NewtonDivergence.
complex continued_fraction_eigen(const ClassOperator& op, complex seed,
                                 const ContinuedFractionOptions& options = {});

/// Eigenvalues with |Re| > tol. Throws PreconditionError for tol <= 0.
int count_nonimaginary(const SpectrumReport& report, double tol);
/// 0.05 in the normalized units 2 lambda / |Gamma|.
inline double default_nonimaginary_tolerance(complex gamma) { return 0.025 * std::abs(gamma); }

/// Hausdorff distance between eig(exp(tM)) and exp(t eig(M)). Requires
/// t != 0 and dimension <= 200.
double spectral_mapping_check(const Eigen::MatrixXcd& m, double t);
double spectral_mapping_check(const ClassOperator& op, double t);

/// Largest distance from -l, conj(l), -conj(l) to the spectrum, over all l.
double quadruple_symmetry_defect(const std::vector<complex>& eigenvalues);
inline double quadruple_symmetry_defect(const SpectrumReport& r) {
  return quadruple_symmetry_defect(r.eigenvalues);
}

/// Dense eigenvalues of a general complex matrix; throws NumericalFailure
/// when the QR iteration does not converge.
std::vector<complex> eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace chaoslab
