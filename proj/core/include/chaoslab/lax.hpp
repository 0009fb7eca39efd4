#pragma once

// Lax operators of the 2D Euler, Rossby and 3D Euler equations on periodic
// collocation grids, and numerical checks of their compatibility.

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "chaoslab/grid.hpp"

namespace chaoslab::lax {

struct LaxReport {
  std::map<std::string, double> residuals;  // grid sup-norms
  std::map<std::string, bool> flags;
  std::map<std::string, std::vector<complex>> spectra;
};

nlohmann::json to_json(const LaxReport& r);

/// L phi = {Omega, phi}.
GridField2D lax_L_2d(const GridField2D& omega, const GridField2D& phi);
/// A phi = {Psi, phi}.
GridField2D lax_A_2d(const GridField2D& psi, const GridField2D& phi);

/// {Omega,{Psi,phi}} - {Psi,{Omega,phi}} - {{Omega,Psi},phi}.
GridField2D jacobi_defect(const GridField2D& omega, const GridField2D& psi, const GridField2D& phi);

/// Rule producing dOmega/dt from Omega.
using TimeDerivative = std::function<GridField2D(const GridField2D&)>;

/// dOmega/dt from the Galerkin system on the 2/3 band of the grid.
TimeDerivative euler_time_derivative();

/// {dOmega/dt + {Psi, Omega}, phi}.
GridField2D euler_transport_residual(const GridField2D& omega, const GridField2D& domega_dt,
                                     const GridField2D& phi);

/// For each sample phi_i, residuals "jacobi[i]" and "transport[i]", plus
/// their maxima "jacobi" and "transport". Psi = invert_laplacian(Omega).
/// An empty rule selects euler_time_derivative().
LaxReport compatibility_residual_2d(const GridField2D& omega, const std::vector<GridField2D>& phis,
                                    const TimeDerivative& rule = {});

/// Matrix of phi -> {Omega, phi} on exp(i k.x), k in the box without the
/// origin, rows and columns in CoefficientField index order.
Eigen::MatrixXcd bracket_operator_matrix(const CoefficientField& omega);

/// Hausdorff distance between the spectra of the bracket operator at t = 0
/// and at t = T, with Omega evolved by the Galerkin system (RK4, step dt).
/// Requires box <= 6.
LaxReport isospectrality_check(const CoefficientField& omega0, double T, double dt);

/// {Omega, phi} - beta dphi/dx.
GridField2D rossby_L(const GridField2D& omega, double beta, const GridField2D& phi);

/// u = (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x); curl u = u.
VectorField3D abc_flow(int n, double A = 1.0, double B = 1.0, double C = 1.0);

double divergence_defect(const VectorField3D& u);
double curl_defect(const VectorField3D& omega, const VectorField3D& u);

/// (L phi, A phi) = ((Omega.grad) phi, (u.grad) phi). Throws
/// PreconditionError when div u > 1e-10 or |Omega - curl u| > 1e-8.
std::pair<GridField3D, GridField3D> lax_3d_scalar(const VectorField3D& omega, const VectorField3D& u,
                                                  const GridField3D& phi);

/// L phi = (Omega.grad) phi - (phi.grad) Omega,
/// A phi = (u.grad) phi - (phi.grad) u. Same preconditions.
std::pair<VectorField3D, VectorField3D> lax_3d_vector(const VectorField3D& omega,
                                                      const VectorField3D& u,
                                                      const VectorField3D& phi);

}  // namespace chaoslab::lax
