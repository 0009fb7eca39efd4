#pragma once

// Wavevector lattice arithmetic and the truncated Fourier-Galerkin form of
// the 2D Euler equations in vorticity variables,
//
//   d/dt w_k = sum_{p+q=k} A(p,q) w_p w_q,
//   A(p,q)   = 1/2 (|q|^-2 - |p|^-2) (p1 q2 - p2 q1),
//
// on the periodic square of side 2*pi, restricted to the box |k1|,|k2| <= B.

#include <complex>
#include <compare>
#include <cstddef>
#include <vector>

namespace chaoslab {

using complex = std::complex<double>;

struct WaveVector {
  int k1 = 0;
  int k2 = 0;

  constexpr int norm2() const { return k1 * k1 + k2 * k2; }
  constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }

  friend constexpr WaveVector operator+(WaveVector a, WaveVector b) {
    return {a.k1 + b.k1, a.k2 + b.k2};
  }
  friend constexpr WaveVector operator-(WaveVector a, WaveVector b) {
    return {a.k1 - b.k1, a.k2 - b.k2};
  }
  friend constexpr WaveVector operator-(WaveVector a) { return {-a.k1, -a.k2}; }
  friend constexpr WaveVector operator*(int n, WaveVector a) {
    return {n * a.k1, n * a.k2};
  }
  friend constexpr bool operator==(WaveVector, WaveVector) = default;
  friend constexpr auto operator<=>(WaveVector, WaveVector) = default;
};

/// p1*q2 - p2*q1, in exact integer arithmetic.
constexpr int determinant(WaveVector p, WaveVector q) {
  return p.k1 * q.k2 - p.k2 * q.k1;
}

/// Lexicographically positive half of the lattice: k1 > 0, or k1 == 0 and k2 > 0.
constexpr bool is_upper_half(WaveVector k) {
  return k.k1 > 0 || (k.k1 == 0 && k.k2 > 0);
}

/// Interaction coefficient A(p,q). Throws DomainError for a zero argument.
double coef_A(WaveVector p, WaveVector q);

/// Vorticity Fourier coefficients on the box |k1|,|k2| <= box.
///
/// The whole box is stored; every write through set() also writes the
/// conjugate partner so that w_{-k} = conj(w_k) always holds. The (0,0) slot
/// exists for indexing convenience but is pinned to zero.
class CoefficientField {
 public:
  CoefficientField() = default;
  explicit CoefficientField(int box);

  int box() const { return box_; }
  int side() const { return 2 * box_ + 1; }

  bool contains(WaveVector k) const {
    return k.k1 >= -box_ && k.k1 <= box_ && k.k2 >= -box_ && k.k2 <= box_;
  }

  /// Amplitude at k; zero outside the box and at the origin.
  complex operator()(WaveVector k) const {
    return contains(k) ? coeffs_[index(k)] : complex{};
  }

  /// Sets w_k = value and w_{-k} = conj(value). k must be a nonzero mode in
  /// the box.
  void set(WaveVector k, complex value);

  /// Largest |w_{-k} - conj(w_k)| over the box, plus |w_0|.
  double symmetry_defect() const;

  /// Visits every nonzero mode in the box, both halves.
  template <class F>
  void for_each_mode(F&& f) const {
    for (int a = -box_; a <= box_; ++a)
      for (int b = -box_; b <= box_; ++b) {
        if (a == 0 && b == 0) continue;
        const WaveVector k{a, b};
        f(k, coeffs_[index(k)]);
      }
  }

  double max_abs() const;

  /// Raw storage, row-major in (k1, k2) with offset `box`. Linear
  /// combinations of symmetric fields stay symmetric, which is all the
  /// integrators need.
  const std::vector<complex>& raw() const { return coeffs_; }
  std::vector<complex>& raw() { return coeffs_; }

  std::size_t index(WaveVector k) const {
    return static_cast<std::size_t>((k.k1 + box_) * side() + (k.k2 + box_));
  }

  CoefficientField& operator+=(const CoefficientField& other);
  CoefficientField& operator*=(double s);
  friend CoefficientField operator+(CoefficientField a, const CoefficientField& b) {
    return a += b;
  }
  friend CoefficientField operator*(double s, CoefficientField a) { return a *= s; }

 private:
  int box_ = 0;
  std::vector<complex> coeffs_;
};

/// Right-hand side of the box-truncated Galerkin system: every p, q and k in
/// the convolution lies in the box.
CoefficientField galerkin_rhs(const CoefficientField& state);

/// Sum of |w_k|^2 |k|^-2 over all stored nonzero modes (each +-k pair is
/// counted twice).
double energy(const CoefficientField& state);
/// Sum of |w_k|^2 over all stored nonzero modes.
double enstrophy(const CoefficientField& state);

/// d/dt energy along `rate`: 2 sum |k|^-2 Re(conj(w_k) dw_k).
double energy_rate(const CoefficientField& state, const CoefficientField& rate);
/// d/dt enstrophy along `rate`: 2 sum Re(conj(w_k) dw_k).
double enstrophy_rate(const CoefficientField& state, const CoefficientField& rate);

/// Fixed-step RK4 evolution of the Galerkin system.
CoefficientField evolve_galerkin(const CoefficientField& initial, double dt, long steps);

// Classes: lattice lines k_hat + n p along which the linearization at the
// single-mode fixed point w_p = Gamma decouples.

struct ClassIndex {
  WaveVector base;       // k_hat
  WaveVector direction;  // p
};

struct ClassMember {
  int n;
  WaveVector k;
};

/// k_hat + n p for n in [n_first, n_last], skipping the lattice origin.
/// Throws DomainError for p = 0.
std::vector<ClassMember> class_members(const ClassIndex& cls, int n_first, int n_last);

/// Number of nonzero lattice points q with |q| < |p| and q not parallel to p.
int zeta(WaveVector p);

}  // namespace chaoslab
