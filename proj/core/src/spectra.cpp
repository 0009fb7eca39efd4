#include "chaoslab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "chaoslab/sets.hpp"

namespace chaoslab {

namespace {

WaveVector member(const ClassIndex& cls, int n) { return cls.base + n * cls.direction; }

// c_n and d_n straight from the recurrence; a coupling to or from the origin
// slot is zero.
complex sub_coupling(const ClassIndex& cls, complex gamma, int n) {
  const WaveVector prev = member(cls, n - 1);
  if (prev.is_zero() || member(cls, n).is_zero()) return 0.0;
  return coef_A(cls.direction, prev) * gamma;
}

complex super_coupling(const ClassIndex& cls, complex gamma, int n) {
  const WaveVector next = member(cls, n + 1);
  if (next.is_zero() || member(cls, n).is_zero()) return 0.0;
  return coef_A(-cls.direction, next) * std::conj(gamma);
}

// Index of the origin inside the class line, if the line passes through it.
std::optional<int> origin_slot(const ClassIndex& cls) {
  const WaveVector k = cls.base, p = cls.direction;
  if (determinant(p, k) != 0) return std::nullopt;
  // k = -n p for an integer n
  const int num = -(k.k1 * p.k1 + k.k2 * p.k2);
  const int den = p.norm2();
  if (num % den != 0) return std::nullopt;
  return num / den;
}

std::string band_dump(const ClassOperator& op) {
  std::ostringstream os;
  os.precision(17);
  os << "class operator dump (n, k, c_n, d_n):\n";
  for (int i = 0; i < op.dimension(); ++i)
    os << op.n[i] << " (" << op.modes[i].k1 << "," << op.modes[i].k2 << ") " << op.sub_coeffs[i]
       << ' ' << op.super_coeffs[i] << '\n';
  return os.str();
}

int default_pivot(const ClassIndex& cls, int depth) {
  int best = 0;
  int best_norm = std::numeric_limits<int>::max();
  for (int n = -depth; n <= depth; ++n) {
    const int k2 = member(cls, n).norm2();
    if (k2 == 0) continue;
    if (k2 < best_norm || (k2 == best_norm && std::abs(n) < std::abs(best))) {
      best = n;
      best_norm = k2;
    }
  }
  return best;
}

}  // namespace

Eigen::MatrixXcd ClassOperator::matrix() const {
  const int d = dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (i > 0 && n[i - 1] == n[i] - 1) m(i, i - 1) = sub_coeffs[i];
    if (i + 1 < d && n[i + 1] == n[i] + 1) m(i, i + 1) = super_coeffs[i];
  }
  return m;
}

ClassOperator build_class_operator(const ClassIndex& cls, complex gamma, int trunc) {
  if (trunc < 1) throw PreconditionError("build_class_operator: trunc must be >= 1");
  if (cls.direction.is_zero()) throw DomainError("build_class_operator: zero class direction");
  ClassOperator op;
  op.cls = cls;
  op.gamma = gamma;
  op.trunc = trunc;
  op.degenerate = determinant(cls.direction, cls.base) == 0;
  for (const auto& [n, k] : class_members(cls, -trunc, trunc)) {
    op.n.push_back(n);
    op.modes.push_back(k);
    op.sub_coeffs.push_back(n > -trunc ? sub_coupling(cls, gamma, n) : complex{});
    op.super_coeffs.push_back(n < trunc ? super_coupling(cls, gamma, n) : complex{});
  }
  return op;
}

bool meets_closed_disk(const ClassIndex& cls) {
  const WaveVector k = cls.base, p = cls.direction;
  if (p.is_zero()) throw DomainError("meets_closed_disk: zero class direction");
  // |k + n p|^2 is minimized near n* = -(k.p)/|p|^2
  const double nstar = -static_cast<double>(k.k1 * p.k1 + k.k2 * p.k2) / p.norm2();
  const int lo = static_cast<int>(std::floor(nstar)) - 1;
  const int hi = static_cast<int>(std::ceil(nstar)) + 1;
  for (int n = lo; n <= hi; ++n) {
    const int r2 = member(cls, n).norm2();
    if (r2 > 0 && r2 <= p.norm2()) return true;
  }
  return false;
}

const char* to_string(SpectrumCase c) {
  return c == SpectrumCase::ContinuousOnly ? "ContinuousOnly" : "MixedPointSpectrum";
}

std::vector<complex> eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectrumReport truncated_spectrum(const ClassOperator& op) {
  if (op.dimension() > 2001)
    throw PreconditionError("truncated_spectrum: dimension " + std::to_string(op.dimension()) +
                            " exceeds 2001");
  SpectrumReport r;
  try {
    r.eigenvalues = eigenvalues(op.matrix());
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(std::string("truncated_spectrum: ") + e.what() + "\n" + band_dump(op));
  }
  r.spectrum_case = meets_closed_disk(op.cls) ? SpectrumCase::MixedPointSpectrum
                                               : SpectrumCase::ContinuousOnly;
  const WaveVector p = op.cls.direction;
  r.b = -0.5 * std::abs(op.gamma) / p.norm2() * determinant(p, op.cls.base);
  r.zeta_bound = zeta(p);
  r.trunc = op.trunc;
  return r;
}

std::pair<complex, complex> continued_fraction_residual(const ClassOperator& op, complex lambda,
                                                         int depth, int pivot) {
  const ClassIndex& cls = op.cls;
  const complex g = op.gamma;
  if (member(cls, pivot).is_zero())
    throw PreconditionError("continued_fraction_residual: pivot is the origin slot");
  int lo = -depth, hi = depth;
  if (auto z = origin_slot(cls)) {
    if (*z < pivot) lo = std::max(lo, *z + 1);
    else hi = std::min(hi, *z - 1);
  }

  // R+_n = w_n / w_{n-1} = c_n / (l - d_n R+_{n+1}), zero beyond hi
  complex rp = 0.0, drp = 0.0;
  for (int n = hi; n > pivot; --n) {
    const complex c = sub_coupling(cls, g, n), d = super_coupling(cls, g, n);
    const complex den = lambda - d * rp;
    const complex dden = 1.0 - d * drp;
    drp = -c * dden / (den * den);
    rp = c / den;
  }
  // R-_n = w_n / w_{n+1} = d_n / (l - c_n R-_{n-1}), zero below lo
  complex rm = 0.0, drm = 0.0;
  for (int n = lo; n < pivot; ++n) {
    const complex c = sub_coupling(cls, g, n), d = super_coupling(cls, g, n);
    const complex den = lambda - c * rm;
    const complex dden = 1.0 - c * drm;
    drm = -d * dden / (den * den);
    rm = d / den;
  }
  const complex c0 = sub_coupling(cls, g, pivot), d0 = super_coupling(cls, g, pivot);
  const complex f = lambda - c0 * rm - d0 * rp;
  const complex df = 1.0 - c0 * drm - d0 * drp;
  return {f, df};
}

complex continued_fraction_eigen(const ClassOperator& op, complex seed,
                                 const ContinuedFractionOptions& options) {
  // zero operator: every coupling vanishes and the spectrum is {0}
  if (op.degenerate || op.gamma == complex{}) return {};
  const int depth = options.depth > 0 ? options.depth : 4 * op.trunc;
  const int pivot = options.pivot.value_or(default_pivot(op.cls, depth));
  complex lambda = seed;
  for (int it = 0; it < options.max_iterations; ++it) {
    const auto [f, df] = continued_fraction_residual(op, lambda, depth, pivot);
    if (!std::isfinite(std::abs(f)) || !std::isfinite(std::abs(df)))
      throw NewtonDivergence("continued_fraction_eigen: non-finite residual", lambda);
    if (std::abs(f) < options.tolerance) return lambda;
    if (df == complex{})
      throw NewtonDivergence("continued_fraction_eigen: zero derivative", lambda);
    lambda -= f / df;
  }
  const auto [f, df] = continued_fraction_residual(op, lambda, depth, pivot);
  if (std::abs(f) < options.tolerance) return lambda;
  std::ostringstream os;
  os.precision(17);
  os << "continued_fraction_eigen: no convergence after " << options.max_iterations
     << " Newton steps, last iterate " << lambda << ", |F| = " << std::abs(f);
  throw NewtonDivergence(os.str(), lambda);
}

int count_nonimaginary(const SpectrumReport& report, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("count_nonimaginary: tol must be positive");
  return static_cast<int>(std::count_if(report.eigenvalues.begin(), report.eigenvalues.end(),
                                        [tol](complex l) { return std::abs(l.real()) > tol; }));
}

double spectral_mapping_check(const Eigen::MatrixXcd& m, double t) {
  if (t == 0.0) throw PreconditionError("spectral_mapping_check: t must be nonzero");
  if (m.rows() > 200) throw PreconditionError("spectral_mapping_check: dimension exceeds 200");
  const Eigen::MatrixXcd tm = t * m;
  const Eigen::MatrixXcd e = tm.exp();
  std::vector<complex> lhs = eigenvalues(e);
  std::vector<complex> rhs = eigenvalues(m);
  for (complex& l : rhs) l = std::exp(t * l);
  return hausdorff_distance(lhs, rhs);
}

double spectral_mapping_check(const ClassOperator& op, double t) {
  return spectral_mapping_check(op.matrix(), t);
}

double quadruple_symmetry_defect(const std::vector<complex>& eigenvalues) {
  double worst = 0.0;
  for (complex l : eigenvalues)
    for (complex image : {-l, std::conj(l), -std::conj(l)})
      worst = std::max(worst, distance_to_set(image, eigenvalues));
  return worst;
}

}  // namespace chaoslab
