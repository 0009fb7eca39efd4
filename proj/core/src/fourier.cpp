#include "chaoslab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chaoslab/errors.hpp"
#include "chaoslab/integrators.hpp"

namespace chaoslab {

namespace {

std::string to_string(WaveVector k) {
  return "(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + ")";
}

}  // namespace

double coef_A(WaveVector p, WaveVector q) {
  if (p.is_zero() || q.is_zero())
    throw DomainError("coef_A: zero wavevector " + to_string(p.is_zero() ? p : q));
  const int det = determinant(p, q);
  if (det == 0) return 0.0;
  const double bracket = 1.0 / q.norm2() - 1.0 / p.norm2();
  return 0.5 * bracket * det;
}

CoefficientField::CoefficientField(int box) : box_(box) {
  if (box < 0) throw PreconditionError("CoefficientField: negative box");
  coeffs_.assign(static_cast<std::size_t>(side()) * side(), complex{});
}

void CoefficientField::set(WaveVector k, complex value) {
  if (k.is_zero()) throw DomainError("CoefficientField::set: the (0,0) mode is not stored");
  if (!contains(k))
    throw PreconditionError("CoefficientField::set: mode " + to_string(k) +
                            " outside box " + std::to_string(box_));
  coeffs_[index(k)] = value;
  coeffs_[index(-k)] = std::conj(value);
}

double CoefficientField::symmetry_defect() const {
  if (coeffs_.empty()) return 0.0;
  double worst = std::abs(coeffs_[index({0, 0})]);
  for_each_mode([&](WaveVector k, complex w) {
    worst = std::max(worst, std::abs(coeffs_[index(-k)] - std::conj(w)));
  });
  return worst;
}

double CoefficientField::max_abs() const {
  double m = 0.0;
  for (const complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

CoefficientField& CoefficientField::operator+=(const CoefficientField& other) {
  if (other.box_ != box_) throw PreconditionError("CoefficientField: box mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CoefficientField& CoefficientField::operator*=(double s) {
  for (complex& c : coeffs_) c *= s;
  return *this;
}

CoefficientField galerkin_rhs(const CoefficientField& state) {
  const int B = state.box();
  CoefficientField out(B);
  if (B == 0) return out;

  const int s = state.side();
  std::vector<double> inv_norm(static_cast<std::size_t>(s) * s, 0.0);
  for (int a = -B; a <= B; ++a)
    for (int b = -B; b <= B; ++b)
      if (a != 0 || b != 0) inv_norm[state.index({a, b})] = 1.0 / (a * a + b * b);

  const auto& w = state.raw();
  auto& dw = out.raw();
  for (int a = -B; a <= B; ++a)
    for (int b = -B; b <= B; ++b) {
      const WaveVector k{a, b};
      if (!is_upper_half(k)) continue;
      complex acc{};
      // p ranges over the box intersected with the box shifted by k
      for (int p1 = std::max(-B, a - B); p1 <= std::min(B, a + B); ++p1)
        for (int p2 = std::max(-B, b - B); p2 <= std::min(B, b + B); ++p2) {
          const WaveVector p{p1, p2};
          const WaveVector q = k - p;
          if (p.is_zero() || q.is_zero()) continue;
          const int det = determinant(p, q);
          if (det == 0) continue;
          const std::size_t ip = state.index(p), iq = state.index(q);
          acc += (0.5 * (inv_norm[iq] - inv_norm[ip]) * det) * w[ip] * w[iq];
        }
      dw[state.index(k)] = acc;
      dw[state.index(-k)] = std::conj(acc);
    }
  return out;
}

double energy(const CoefficientField& state) {
  double e = 0.0;
  state.for_each_mode([&](WaveVector k, complex w) { e += std::norm(w) / k.norm2(); });
  return e;
}

double enstrophy(const CoefficientField& state) {
  double z = 0.0;
  state.for_each_mode([&](WaveVector, complex w) { z += std::norm(w); });
  return z;
}

double energy_rate(const CoefficientField& state, const CoefficientField& rate) {
  double r = 0.0;
  state.for_each_mode([&](WaveVector k, complex w) {
    r += (std::conj(w) * rate(k)).real() / k.norm2();
  });
  return 2.0 * r;
}

double enstrophy_rate(const CoefficientField& state, const CoefficientField& rate) {
  double r = 0.0;
  state.for_each_mode([&](WaveVector k, complex w) { r += (std::conj(w) * rate(k)).real(); });
  return 2.0 * r;
}

CoefficientField evolve_galerkin(const CoefficientField& initial, double dt, long steps) {
  if (!(dt > 0.0)) throw PreconditionError("evolve_galerkin: dt must be positive");
  CoefficientField x = initial;
  for (long i = 0; i < steps; ++i) {
    x = rk4_step(x, dt, [](const CoefficientField& y) { return galerkin_rhs(y); });
    if (!std::isfinite(x.max_abs()))
      throw NumericalFailure("evolve_galerkin: non-finite state at step " + std::to_string(i));
  }
  return x;
}

std::vector<ClassMember> class_members(const ClassIndex& cls, int n_first, int n_last) {
  if (cls.direction.is_zero()) throw DomainError("class_members: zero class direction");
  std::vector<ClassMember> out;
  for (int n = n_first; n <= n_last; ++n) {
    const WaveVector k = cls.base + n * cls.direction;
    if (!k.is_zero()) out.push_back({n, k});
  }
  return out;
}

int zeta(WaveVector p) {
  if (p.is_zero()) throw DomainError("zeta: zero wavevector");
  const int r2 = p.norm2();
  const int r = static_cast<int>(std::sqrt(static_cast<double>(r2))) + 1;
  int count = 0;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b) {
      const WaveVector q{a, b};
      if (q.is_zero() || q.norm2() >= r2) continue;
      if (determinant(p, q) != 0) ++count;
    }
  return count;
}

}  // namespace chaoslab
