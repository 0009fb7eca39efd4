#pragma once

// Real fields sampled on uniform periodic grids of period 2*pi per axis,
// with Fourier-collocation calculus.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "chaoslab/fourier.hpp"

namespace chaoslab {

/// n x n samples, v(i, j) = f(2*pi*i/n, 2*pi*j/n). The first index is x.
class GridField2D {
 public:
  GridField2D() = default;
  /// Zero field. n must be a power of two >= 16.
  explicit GridField2D(int n);

  template <class F>
  static GridField2D sample(int n, F&& f) {
    GridField2D g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = f(g.coord(i), g.coord(j));
    return g;
  }
  static GridField2D constant(int n, double c);

  int resolution() const { return n_; }
  double coord(int i) const { return 2.0 * std::numbers::pi * i / n_; }

  double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * n_ + j]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double max_abs() const;
  double mean() const;

  GridField2D& operator+=(const GridField2D& o);
  GridField2D& operator-=(const GridField2D& o);
  GridField2D& operator*=(double s);
  friend GridField2D operator+(GridField2D a, const GridField2D& b) { return a += b; }
  friend GridField2D operator-(GridField2D a, const GridField2D& b) { return a -= b; }
  friend GridField2D operator*(double s, GridField2D a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

GridField2D pointwise_product(const GridField2D& a, const GridField2D& b);
double sup_distance(const GridField2D& a, const GridField2D& b);

/// Largest retained wavenumber under the 2/3 rule.
constexpr int dealias_cutoff(int n) { return n / 3; }

/// Spectral partial derivative d^ox/dx^ox d^oy/dy^oy. Odd orders zero the
/// Nyquist bin.
GridField2D derivative(const GridField2D& f, int ox, int oy);
inline GridField2D partial_x(const GridField2D& f) { return derivative(f, 1, 0); }
inline GridField2D partial_y(const GridField2D& f) { return derivative(f, 0, 1); }
GridField2D laplacian(const GridField2D& f);

/// Removes modes with |k1| or |k2| above dealias_cutoff(n).
GridField2D dealias(const GridField2D& f);

/// {f,g} = f_x g_y - f_y g_x with spectral derivatives. Inputs are truncated
/// to the 2/3 band before differentiation and the product is truncated
/// after. Throws PreconditionError on resolution mismatch.
GridField2D grid_bracket(const GridField2D& f, const GridField2D& g);

/// Same bracket without any truncation, i.e. the exact pointwise value of
/// the collocation derivatives.
GridField2D pointwise_bracket(const GridField2D& f, const GridField2D& g);

/// Psi with Laplacian(Psi) = f and zero mean. Throws DomainError when the
/// mean of f is not zero relative to its size.
GridField2D invert_laplacian(const GridField2D& f);
CoefficientField invert_laplacian(const CoefficientField& f);

/// Synthesis of a coefficient field on an n-grid; requires box < n/2.
GridField2D to_grid(const CoefficientField& c, int n);
/// Analysis of a grid field onto a box; requires box < n/2. The mean is
/// dropped.
CoefficientField to_coefficients(const GridField2D& g, int box);

/// n x n x n samples; v(i, j, l) = f(x_i, y_j, z_l). n must be a power of
/// two >= 8.
class GridField3D {
 public:
  GridField3D() = default;
  explicit GridField3D(int n);

  template <class F>
  static GridField3D sample(int n, F&& f) {
    GridField3D g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) g(i, j, l) = f(g.coord(i), g.coord(j), g.coord(l));
    return g;
  }

  int resolution() const { return n_; }
  double coord(int i) const { return 2.0 * std::numbers::pi * i / n_; }

  double& operator()(int i, int j, int l) { return v_[(static_cast<std::size_t>(i) * n_ + j) * n_ + l]; }
  double operator()(int i, int j, int l) const { return v_[(static_cast<std::size_t>(i) * n_ + j) * n_ + l]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double max_abs() const;

  GridField3D& operator+=(const GridField3D& o);
  GridField3D& operator-=(const GridField3D& o);
  GridField3D& operator*=(double s);
  friend GridField3D operator+(GridField3D a, const GridField3D& b) { return a += b; }
  friend GridField3D operator-(GridField3D a, const GridField3D& b) { return a -= b; }
  friend GridField3D operator*(double s, GridField3D a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

GridField3D pointwise_product(const GridField3D& a, const GridField3D& b);

/// Spectral first derivative along axis 0, 1 or 2.
GridField3D derivative(const GridField3D& f, int axis);

struct VectorField3D {
  std::array<GridField3D, 3> c;

  int resolution() const { return c[0].resolution(); }
  double max_abs() const;

  template <class F>
  static VectorField3D sample(int n, F&& f) {
    VectorField3D v;
    for (int a = 0; a < 3; ++a)
      v.c[a] = GridField3D::sample(n, [&](double x, double y, double z) { return f(x, y, z)[a]; });
    return v;
  }

  VectorField3D& operator-=(const VectorField3D& o) {
    for (int a = 0; a < 3; ++a) c[a] -= o.c[a];
    return *this;
  }
  friend VectorField3D operator-(VectorField3D a, const VectorField3D& b) { return a -= b; }
};

VectorField3D curl(const VectorField3D& u);
GridField3D divergence(const VectorField3D& u);
/// (a . grad) phi
GridField3D directional_derivative(const VectorField3D& a, const GridField3D& phi);
/// (a . grad) b, componentwise
VectorField3D directional_derivative(const VectorField3D& a, const VectorField3D& b);

}  // namespace chaoslab
