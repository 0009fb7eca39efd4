#include "chaoslab/grid.hpp"

#include <algorithm>
#include <string>

#include "chaoslab/errors.hpp"
#include "chaoslab/fft.hpp"

namespace chaoslab {

namespace {

using cvec = std::vector<complex>;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_same(int a, int b, const char* where) {
  if (a != b)
    throw PreconditionError(std::string(where) + ": resolution mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
}

cvec spectrum(const std::vector<double>& v, const std::vector<int>& dims) {
  cvec c(v.begin(), v.end());
  fft::forward(c, dims);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (complex& z : c) z *= scale;
  return c;
}

std::vector<double> synthesize(cvec c, const std::vector<int>& dims) {
  fft::inverse(c, dims);
  std::vector<double> v(c.size());
  std::transform(c.begin(), c.end(), v.begin(), [](complex z) { return z.real(); });
  return v;
}

// (i k)^order, with the Nyquist bin removed for odd orders so that real
// fields stay real.
complex derivative_factor(int bin, int n, int order) {
  if (order == 0) return 1.0;
  const int k = fft::wavenumber(bin, n);
  if (order % 2 == 1 && 2 * k == n) return 0.0;
  return std::pow(complex(0.0, k), order);
}

GridField2D from_spectrum(int n, cvec c) {
  GridField2D g(n);
  g.values() = synthesize(std::move(c), {n, n});
  return g;
}

cvec spectrum(const GridField2D& f) {
  return spectrum(f.values(), {f.resolution(), f.resolution()});
}

void apply_derivative(cvec& c, int n, int ox, int oy) {
  for (int i = 0; i < n; ++i) {
    const complex fx = derivative_factor(i, n, ox);
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i) * n + j] *= fx * derivative_factor(j, n, oy);
  }
}

void truncate_band(cvec& c, int n) {
  const int kc = dealias_cutoff(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(fft::wavenumber(i, n)) > kc || std::abs(fft::wavenumber(j, n)) > kc)
        c[static_cast<std::size_t>(i) * n + j] = 0.0;
}

GridField2D differentiated(const cvec& c, int n, int ox, int oy) {
  cvec d = c;
  apply_derivative(d, n, ox, oy);
  return from_spectrum(n, std::move(d));
}

GridField2D bracket_from_spectra(const cvec& f, const cvec& g, int n) {
  GridField2D out(n);
  const GridField2D fx = differentiated(f, n, 1, 0), fy = differentiated(f, n, 0, 1);
  const GridField2D gx = differentiated(g, n, 1, 0), gy = differentiated(g, n, 0, 1);
  auto& o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i)
    o[i] = fx.values()[i] * gy.values()[i] - fy.values()[i] * gx.values()[i];
  return out;
}

}  // namespace

GridField2D::GridField2D(int n) : n_(n) {
  if (n < 16 || !is_power_of_two(n))
    throw PreconditionError("GridField2D: resolution must be a power of two >= 16, got " +
                            std::to_string(n));
  v_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

GridField2D GridField2D::constant(int n, double c) {
  GridField2D g(n);
  std::fill(g.v_.begin(), g.v_.end(), c);
  return g;
}

double GridField2D::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

double GridField2D::mean() const {
  double s = 0.0;
  for (double x : v_) s += x;
  return v_.empty() ? 0.0 : s / static_cast<double>(v_.size());
}

GridField2D& GridField2D::operator+=(const GridField2D& o) {
  check_same(n_, o.n_, "GridField2D");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridField2D& GridField2D::operator-=(const GridField2D& o) {
  check_same(n_, o.n_, "GridField2D");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

GridField2D& GridField2D::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

GridField2D pointwise_product(const GridField2D& a, const GridField2D& b) {
  check_same(a.resolution(), b.resolution(), "pointwise_product");
  GridField2D out = a;
  for (std::size_t i = 0; i < out.values().size(); ++i) out.values()[i] *= b.values()[i];
  return out;
}

double sup_distance(const GridField2D& a, const GridField2D& b) {
  check_same(a.resolution(), b.resolution(), "sup_distance");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

GridField2D derivative(const GridField2D& f, int ox, int oy) {
  if (ox < 0 || oy < 0) throw PreconditionError("derivative: negative order");
  return differentiated(spectrum(f), f.resolution(), ox, oy);
}

GridField2D laplacian(const GridField2D& f) {
  const int n = f.resolution();
  cvec c = spectrum(f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int a = fft::wavenumber(i, n), b = fft::wavenumber(j, n);
      c[static_cast<std::size_t>(i) * n + j] *= -static_cast<double>(a * a + b * b);
    }
  return from_spectrum(n, std::move(c));
}

GridField2D dealias(const GridField2D& f) {
  cvec c = spectrum(f);
  truncate_band(c, f.resolution());
  return from_spectrum(f.resolution(), std::move(c));
}

GridField2D grid_bracket(const GridField2D& f, const GridField2D& g) {
  check_same(f.resolution(), g.resolution(), "grid_bracket");
  const int n = f.resolution();
  cvec fc = spectrum(f), gc = spectrum(g);
  truncate_band(fc, n);
  truncate_band(gc, n);
  return dealias(bracket_from_spectra(fc, gc, n));
}

GridField2D pointwise_bracket(const GridField2D& f, const GridField2D& g) {
  check_same(f.resolution(), g.resolution(), "pointwise_bracket");
  return bracket_from_spectra(spectrum(f), spectrum(g), f.resolution());
}

GridField2D invert_laplacian(const GridField2D& f) {
  const double mean = f.mean();
  if (std::abs(mean) > 1e-12 * std::max(1.0, f.max_abs()))
    throw DomainError("invert_laplacian: input has nonzero mean " + std::to_string(mean));
  const int n = f.resolution();
  cvec c = spectrum(f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int a = fft::wavenumber(i, n), b = fft::wavenumber(j, n);
      const int k2 = a * a + b * b;
      c[static_cast<std::size_t>(i) * n + j] *= k2 == 0 ? 0.0 : -1.0 / k2;
    }
  return from_spectrum(n, std::move(c));
}

CoefficientField invert_laplacian(const CoefficientField& f) {
  if (f.box() > 0 && f.raw()[f.index({0, 0})] != complex{})
    throw DomainError("invert_laplacian: coefficient field carries a (0,0) mode");
  CoefficientField out(f.box());
  f.for_each_mode([&](WaveVector k, complex w) {
    out.raw()[out.index(k)] = -w / static_cast<double>(k.norm2());
  });
  return out;
}

GridField2D to_grid(const CoefficientField& c, int n) {
  if (2 * c.box() >= n)
    throw PreconditionError("to_grid: box " + std::to_string(c.box()) +
                            " does not fit resolution " + std::to_string(n));
  cvec s(static_cast<std::size_t>(n) * n, complex{});
  c.for_each_mode([&](WaveVector k, complex w) {
    const int i = (k.k1 + n) % n, j = (k.k2 + n) % n;
    s[static_cast<std::size_t>(i) * n + j] = w;
  });
  return from_spectrum(n, std::move(s));
}

CoefficientField to_coefficients(const GridField2D& g, int box) {
  const int n = g.resolution();
  if (2 * box >= n)
    throw PreconditionError("to_coefficients: box " + std::to_string(box) +
                            " does not fit resolution " + std::to_string(n));
  const cvec s = spectrum(g);
  CoefficientField out(box);
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b) {
      if (a == 0 && b == 0) continue;
      const int i = (a + n) % n, j = (b + n) % n;
      out.raw()[out.index({a, b})] = s[static_cast<std::size_t>(i) * n + j];
    }
  return out;
}

GridField3D::GridField3D(int n) : n_(n) {
  if (n < 8 || !is_power_of_two(n))
    throw PreconditionError("GridField3D: resolution must be a power of two >= 8, got " +
                            std::to_string(n));
  v_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
}

double GridField3D::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

GridField3D& GridField3D::operator+=(const GridField3D& o) {
  check_same(n_, o.n_, "GridField3D");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridField3D& GridField3D::operator-=(const GridField3D& o) {
  check_same(n_, o.n_, "GridField3D");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

GridField3D& GridField3D::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

GridField3D pointwise_product(const GridField3D& a, const GridField3D& b) {
  check_same(a.resolution(), b.resolution(), "pointwise_product");
  GridField3D out = a;
  for (std::size_t i = 0; i < out.values().size(); ++i) out.values()[i] *= b.values()[i];
  return out;
}

GridField3D derivative(const GridField3D& f, int axis) {
  if (axis < 0 || axis > 2) throw PreconditionError("derivative: axis must be 0, 1 or 2");
  const int n = f.resolution();
  const std::vector<int> dims{n, n, n};
  cvec c = spectrum(f.values(), dims);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const int bin = axis == 0 ? i : axis == 1 ? j : l;
        c[(static_cast<std::size_t>(i) * n + j) * n + l] *= derivative_factor(bin, n, 1);
      }
  GridField3D out(n);
  out.values() = synthesize(std::move(c), dims);
  return out;
}

double VectorField3D::max_abs() const {
  return std::max({c[0].max_abs(), c[1].max_abs(), c[2].max_abs()});
}

VectorField3D curl(const VectorField3D& u) {
  VectorField3D w;
  w.c[0] = derivative(u.c[2], 1) - derivative(u.c[1], 2);
  w.c[1] = derivative(u.c[0], 2) - derivative(u.c[2], 0);
  w.c[2] = derivative(u.c[1], 0) - derivative(u.c[0], 1);
  return w;
}

GridField3D divergence(const VectorField3D& u) {
  return derivative(u.c[0], 0) + derivative(u.c[1], 1) + derivative(u.c[2], 2);
}

GridField3D directional_derivative(const VectorField3D& a, const GridField3D& phi) {
  GridField3D out(phi.resolution());
  for (int axis = 0; axis < 3; ++axis)
    out += pointwise_product(a.c[axis], derivative(phi, axis));
  return out;
}

VectorField3D directional_derivative(const VectorField3D& a, const VectorField3D& b) {
  VectorField3D out;
  for (int k = 0; k < 3; ++k) out.c[k] = directional_derivative(a, b.c[k]);
  return out;
}

}  // namespace chaoslab
