#include "chaoslab/maps.hpp"

#include <cmath>

namespace chaoslab::maps {

MapSystem linear_map(const Mat& A) {
  if (A.rows() != A.cols()) throw PreconditionError("linear_map: matrix must be square");
  MapSystem m;
  m.dimension = static_cast<int>(A.rows());
  m.map = [A](const Vec& x) -> Vec { return A * x; };
  m.jacobian = [A](const Vec&) -> Mat { return A; };
  return m;
}

MapSystem hyperbolic_test_map() {
  Mat A(2, 2);
  A << 2.0, 0.0, 0.0, 0.5;
  return linear_map(A);
}

MapSystem rotation_map(double angle) {
  Mat A(2, 2);
  A << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return linear_map(A);
}

MapSystem mcmillan_map(double gamma) {
  if (!(gamma > 0.0)) throw PreconditionError("mcmillan_map: gamma must be positive");
  const double mu = std::cosh(gamma);
  MapSystem m;
  m.dimension = 2;
  m.map = [mu](const Vec& z) -> Vec {
    Vec out(2);
    out << z(1), -z(0) + 2.0 * mu * z(1) / (1.0 + z(1) * z(1));
    return out;
  };
  m.jacobian = [mu](const Vec& z) -> Mat {
    const double y2 = z(1) * z(1);
    Mat J(2, 2);
    J << 0.0, 1.0, -1.0, 2.0 * mu * (1.0 - y2) / ((1.0 + y2) * (1.0 + y2));
    return J;
  };
  return m;
}

Vec mcmillan_homoclinic(double gamma, int n) {
  auto s = [gamma](int k) { return std::sinh(gamma) / std::cosh(k * gamma); };
  Vec z(2);
  z << s(n), s(n + 1);
  return z;
}

std::vector<Vec> mcmillan_segment(double gamma, int m) {
  if (m < 0) throw PreconditionError("mcmillan_segment: m must be >= 0");
  std::vector<Vec> seg;
  for (int n = -m; n <= m; ++n) seg.push_back(mcmillan_homoclinic(gamma, n));
  return seg;
}

MapSystem flow_map(int dimension, std::function<Vec(const Vec&)> rhs,
                   std::function<Mat(const Vec&)> rhs_jacobian, double T, int steps) {
  if (steps < 1 || !(T > 0.0)) throw PreconditionError("flow_map: need T > 0 and steps >= 1");
  const double dt = T / steps;
  MapSystem m;
  m.dimension = dimension;
  m.map = [rhs, dt, steps](const Vec& x0) -> Vec {
    Vec x = x0;
    for (int i = 0; i < steps; ++i) {
      const Vec k1 = rhs(x);
      const Vec k2 = rhs(x + 0.5 * dt * k1);
      const Vec k3 = rhs(x + 0.5 * dt * k2);
      const Vec k4 = rhs(x + dt * k3);
      x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
  };
  if (rhs_jacobian) {
    m.jacobian = [rhs, rhs_jacobian, dt, steps, dimension](const Vec& x0) -> Mat {
      // derivative of the RK4 map itself, stage by stage
      Vec x = x0;
      Mat X = Mat::Identity(dimension, dimension);
      for (int i = 0; i < steps; ++i) {
        const Vec k1 = rhs(x);
        const Mat K1 = rhs_jacobian(x) * X;
        const Vec x2 = x + 0.5 * dt * k1;
        const Vec k2 = rhs(x2);
        const Mat K2 = rhs_jacobian(x2) * (X + 0.5 * dt * K1);
        const Vec x3 = x + 0.5 * dt * k2;
        const Vec k3 = rhs(x3);
        const Mat K3 = rhs_jacobian(x3) * (X + 0.5 * dt * K2);
        const Vec x4 = x + dt * k3;
        const Vec k4 = rhs(x4);
        const Mat K4 = rhs_jacobian(x4) * (X + dt * K3);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        X += (dt / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
      }
      return X;
    };
  }
  return m;
}

Vec pack(const dashed::State& s) {
  Vec v(static_cast<Eigen::Index>(s.omega.size() + 1));
  v(0) = s.omega_p;
  for (std::size_t i = 0; i < s.omega.size(); ++i) v(static_cast<Eigen::Index>(i + 1)) = s.omega[i];
  return v;
}

dashed::State unpack_dashed(const Vec& v, int trunc) {
  if (v.size() != 2 * trunc + 2) throw PreconditionError("unpack_dashed: wrong vector length");
  dashed::State s(trunc);
  s.omega_p = v(0);
  for (std::size_t i = 0; i < s.omega.size(); ++i) s.omega[i] = v(static_cast<Eigen::Index>(i + 1));
  return s;
}

MapSystem dashed_line_period_map(const dashed::Params& p, double T, int steps) {
  dashed::validate(p);
  const int trunc = p.trunc;
  auto rhs = [p, trunc](const Vec& x) { return pack(dashed::model_rhs(unpack_dashed(x, trunc), p)); };
  auto jac = [p, trunc](const Vec& x) { return dashed::model_jacobian(unpack_dashed(x, trunc), p); };
  return flow_map(2 * trunc + 2, rhs, jac, T, steps);
}

Vec pack(const nls::LatticeState& s) {
  const int N = s.size();
  Vec v(2 * N);
  for (int n = 0; n < N; ++n) {
    v(n) = s.q[n].real();
    v(n + N) = s.q[n].imag();
  }
  return v;
}

nls::LatticeState unpack_nls(const Vec& v) {
  if (v.size() % 2 != 0) throw PreconditionError("unpack_nls: odd vector length");
  const int N = static_cast<int>(v.size() / 2);
  nls::LatticeState s(N);
  for (int n = 0; n < N; ++n) s.q[n] = {v(n), v(n + N)};
  return s;
}

MapSystem nls_period_map(const nls::Params& p, double T, int steps) {
  nls::validate(p, false);
  if (T / steps > 0.1 * p.h() * p.h())
    throw PreconditionError("nls_period_map: T / steps must satisfy dt <= 0.1 h^2");
  auto rhs = [p](const Vec& x) { return pack(nls::pdnls_rhs(unpack_nls(x), p)); };
  auto jac = [p](const Vec& x) { return nls::pdnls_jacobian(unpack_nls(x), p); };
  return flow_map(2 * p.N, rhs, jac, T, steps);
}

}  // namespace chaoslab::maps
