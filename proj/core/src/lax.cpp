#include "chaoslab/lax.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chaoslab/errors.hpp"
#include "chaoslab/sets.hpp"
#include "chaoslab/spectra.hpp"

namespace chaoslab::lax {

nlohmann::json to_json(const LaxReport& r) {
  nlohmann::json j;
  j["residuals"] = r.residuals;
  j["flags"] = r.flags;
  nlohmann::json spectra = nlohmann::json::object();
  for (const auto& [name, ev] : r.spectra) {
    nlohmann::json list = nlohmann::json::array();
    for (complex z : ev) list.push_back({z.real(), z.imag()});
    spectra[name] = std::move(list);
  }
  j["spectra"] = std::move(spectra);
  return j;
}

GridField2D lax_L_2d(const GridField2D& omega, const GridField2D& phi) {
  return grid_bracket(omega, phi);
}

GridField2D lax_A_2d(const GridField2D& psi, const GridField2D& phi) {
  return grid_bracket(psi, phi);
}

GridField2D jacobi_defect(const GridField2D& omega, const GridField2D& psi, const GridField2D& phi) {
  return grid_bracket(omega, grid_bracket(psi, phi)) - grid_bracket(psi, grid_bracket(omega, phi)) -
         grid_bracket(grid_bracket(omega, psi), phi);
}

TimeDerivative euler_time_derivative() {
  return [](const GridField2D& omega) {
    const int n = omega.resolution();
    const int box = dealias_cutoff(n);
    return to_grid(galerkin_rhs(to_coefficients(omega, box)), n);
  };
}

GridField2D euler_transport_residual(const GridField2D& omega, const GridField2D& domega_dt,
                                     const GridField2D& phi) {
  const GridField2D psi = invert_laplacian(omega - GridField2D::constant(omega.resolution(), omega.mean()));
  return grid_bracket(domega_dt + grid_bracket(psi, omega), phi);
}

LaxReport compatibility_residual_2d(const GridField2D& omega, const std::vector<GridField2D>& phis,
                                    const TimeDerivative& rule) {
  const GridField2D psi = invert_laplacian(omega);
  const GridField2D dt = rule ? rule(omega) : euler_time_derivative()(omega);
  LaxReport r;
  double jac = 0.0, tr = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double a = jacobi_defect(omega, psi, phis[i]).max_abs();
    const double b = euler_transport_residual(omega, dt, phis[i]).max_abs();
    r.residuals["jacobi[" + std::to_string(i) + "]"] = a;
    r.residuals["transport[" + std::to_string(i) + "]"] = b;
    jac = std::max(jac, a);
    tr = std::max(tr, b);
  }
  r.residuals["jacobi"] = jac;
  r.residuals["transport"] = tr;
  return r;
}

Eigen::MatrixXcd bracket_operator_matrix(const CoefficientField& omega) {
  const int B = omega.box();
  std::vector<WaveVector> basis;
  for (int a = -B; a <= B; ++a)
    for (int b = -B; b <= B; ++b)
      if (a != 0 || b != 0) basis.push_back({a, b});
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  // {e^{ip.x}, e^{iq.x}} = -det(p, q) e^{i(p+q).x}
  for (int row = 0; row < dim; ++row)
    for (int col = 0; col < dim; ++col) {
      const WaveVector k = basis[row], q = basis[col];
      const WaveVector p = k - q;
      if (p.is_zero() || !omega.contains(p)) continue;
      const int det = determinant(k, q);
      if (det != 0) M(row, col) = -static_cast<double>(det) * omega(p);
    }
  return M;
}

LaxReport isospectrality_check(const CoefficientField& omega0, double T, double dt) {
  if (omega0.box() > 6) throw PreconditionError("isospectrality_check: box must be <= 6");
  if (!(dt > 0.0) || !(T >= 0.0)) throw PreconditionError("isospectrality_check: need dt > 0, T >= 0");
  const long steps = std::lround(T / dt);
  const CoefficientField omegaT = steps > 0 ? evolve_galerkin(omega0, T / steps, steps) : omega0;
  LaxReport r;
  auto s0 = eigenvalues(bracket_operator_matrix(omega0));
  auto sT = eigenvalues(bracket_operator_matrix(omegaT));
  r.residuals["hausdorff"] = hausdorff_distance(s0, sT);
  r.residuals["enstrophy_drift"] = std::abs(enstrophy(omegaT) - enstrophy(omega0));
  r.spectra["t0"] = std::move(s0);
  r.spectra["T"] = std::move(sT);
  return r;
}

GridField2D rossby_L(const GridField2D& omega, double beta, const GridField2D& phi) {
  return grid_bracket(omega, phi) - beta * partial_x(phi);
}

VectorField3D abc_flow(int n, double A, double B, double C) {
  return VectorField3D::sample(n, [&](double x, double y, double z) {
    return std::array<double, 3>{A * std::sin(z) + C * std::cos(y), B * std::sin(x) + A * std::cos(z),
                                 C * std::sin(y) + B * std::cos(x)};
  });
}

double divergence_defect(const VectorField3D& u) { return divergence(u).max_abs(); }

double curl_defect(const VectorField3D& omega, const VectorField3D& u) {
  return (omega - curl(u)).max_abs();
}

namespace {

void check_pair(const VectorField3D& omega, const VectorField3D& u) {
  if (omega.resolution() != u.resolution())
    throw PreconditionError("3D Lax pair: resolution mismatch");
  const double div = divergence_defect(u);
  if (div > 1e-10) {
    std::ostringstream os;
    os << "3D Lax pair: u is not divergence free (defect " << div << ")";
    throw PreconditionError(os.str());
  }
  const double c = curl_defect(omega, u);
  if (c > 1e-8) {
    std::ostringstream os;
    os << "3D Lax pair: Omega differs from curl u by " << c;
    throw PreconditionError(os.str());
  }
}

}  // namespace

std::pair<GridField3D, GridField3D> lax_3d_scalar(const VectorField3D& omega, const VectorField3D& u,
                                                  const GridField3D& phi) {
  check_pair(omega, u);
  return {directional_derivative(omega, phi), directional_derivative(u, phi)};
}

std::pair<VectorField3D, VectorField3D> lax_3d_vector(const VectorField3D& omega,
                                                      const VectorField3D& u,
                                                      const VectorField3D& phi) {
  check_pair(omega, u);
  VectorField3D L = directional_derivative(omega, phi) - directional_derivative(phi, omega);
  VectorField3D A = directional_derivative(u, phi) - directional_derivative(phi, u);
  return {std::move(L), std::move(A)};
}

}  // namespace chaoslab::lax
