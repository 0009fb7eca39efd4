#pragma once

// Ready-made MapSystem instances: linear test maps, and time-T maps of the
// flows in this library with Jacobians from the variational equations.

#include <functional>
#include <vector>

#include "chaoslab/dashed_line.hpp"
#include "chaoslab/nls.hpp"
#include "chaoslab/shadowing.hpp"

namespace chaoslab::maps {

using shadow::Mat;
using shadow::MapSystem;
using shadow::Vec;

MapSystem linear_map(const Mat& A);
/// diag(2, 1/2).
MapSystem hyperbolic_test_map();
MapSystem rotation_map(double angle);

/// McMillan map (x, y) -> (y, -x + 2 mu y / (1 + y^2)) with mu = cosh(gamma),
/// gamma > 0. The origin is a saddle with multipliers exp(+-gamma).
MapSystem mcmillan_map(double gamma);
/// Point n of its homoclinic orbit, (s_n, s_{n+1}) with
/// s_n = sinh(gamma) / cosh(n gamma).
Vec mcmillan_homoclinic(double gamma, int n);
/// The segment n = -m .. m.
std::vector<Vec> mcmillan_segment(double gamma, int m);

/// Time-T map of dx/dt = rhs(x) by `steps` RK4 steps. The Jacobian
/// integrates dX/dt = Drhs(x) X alongside with the same scheme, so it is
/// the exact derivative of the discrete map.
MapSystem flow_map(int dimension, std::function<Vec(const Vec&)> rhs,
                   std::function<Mat(const Vec&)> rhs_jacobian, double T, int steps);

/// Packing of dashed-line states as (w_p, w_{-trunc}, ..., w_{trunc}).
Vec pack(const dashed::State& s);
dashed::State unpack_dashed(const Vec& v, int trunc);
MapSystem dashed_line_period_map(const dashed::Params& p, double T, int steps);

/// Packing of lattice states as (Re q, Im q).
Vec pack(const nls::LatticeState& s);
nls::LatticeState unpack_nls(const Vec& v);
MapSystem nls_period_map(const nls::Params& p, double T, int steps);

}  // namespace chaoslab::maps
