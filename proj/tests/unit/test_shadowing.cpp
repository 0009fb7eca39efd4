#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "chaoslab/maps.hpp"
#include "chaoslab/shadowing.hpp"

using namespace chaoslab;
using namespace chaoslab::shadow;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Independent uniform points in [-a, a]^2; a pseudo-orbit of any bounded
// map near the origin with delta of order a.
std::vector<Vec> scattered(int L, double a, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-a, a);
  std::vector<Vec> y;
  for (int j = 0; j < L; ++j) y.push_back(v2(u(rng), u(rng)));
  return y;
}

// Uniformly hyperbolic nonlinear perturbation of diag(2, 1/2).
MapSystem bent_saddle() {
  MapSystem f;
  f.dimension = 2;
  f.map = [](const Vec& v) { return v2(2 * v(0) + 0.1 * std::sin(v(1)), 0.5 * v(1) + 0.1 * std::sin(v(0))); };
  f.jacobian = [](const Vec& v) {
    Mat J(2, 2);
    J << 2, 0.1 * std::cos(v(1)), 0.1 * std::cos(v(0)), 0.5;
    return J;
  };
  return f;
}

}  // namespace

TEST(PseudoOrbit, TrueOrbitHasZeroDefect) {
  const MapSystem f = maps::mcmillan_map(0.7);
  const auto orbit = iterate(f, v2(0.1, 0.2), 30);
  const PseudoOrbitCheck c = is_pseudo_orbit(orbit, f, 0.0);
  EXPECT_EQ(c.max_defect, 0.0);
  EXPECT_TRUE(c.within);
  EXPECT_EQ(shadow_distance(orbit[0], orbit, f), 0.0);
}

TEST(PseudoOrbit, SinglePerturbedPoint) {
  const MapSystem f = maps::hyperbolic_test_map();
  auto orbit = iterate(f, v2(1e-6, 1.0), 10);
  orbit[4](0) += 1e-3;
  const PseudoOrbitCheck c = is_pseudo_orbit(orbit, f, 1e-3);
  EXPECT_NEAR(c.defects[3], 1e-3, 1e-15);
  EXPECT_NEAR(c.defects[4], 2e-3, 1e-15);
  EXPECT_LE(c.max_defect, 1e-3 * (1 + 2) + 1e-15);
  EXPECT_FALSE(c.within);
  EXPECT_THROW(is_pseudo_orbit({v2(0, 0)}, f, 1.0), PreconditionError);
  EXPECT_THROW(PseudoOrbit(orbit, f, 1e-4), PreconditionError);
}

TEST(ShadowDistance, GrowsAlongUnstableDirection) {
  const MapSystem f = maps::hyperbolic_test_map();
  const std::vector<Vec> y(12, v2(0, 0));
  const double d5 = shadow_distance(v2(1e-3, 0), std::vector<Vec>(y.begin(), y.begin() + 5), f);
  const double d12 = shadow_distance(v2(1e-3, 0), y, f);
  EXPECT_DOUBLE_EQ(d5, 1e-3 * 16);
  EXPECT_DOUBLE_EQ(d12, 1e-3 * 2048);
}

TEST(Palmer, ZeroWordIsConstant) {
  const MapSystem f = maps::mcmillan_map(0.5);
  const PseudoOrbit po = palmer_assembly(v2(0, 0), maps::mcmillan_segment(0.5, 4), "000", f);
  EXPECT_EQ(po.points.size(), 27u);
  EXPECT_EQ(po.delta, 0.0);
}

TEST(Palmer, LinearJointGaps) {
  const MapSystem f = maps::hyperbolic_test_map();
  const int m = 3;
  const double a = 0.7, b = -0.4;
  std::vector<Vec> seg;
  for (int j = -m; j <= m; ++j) seg.push_back(v2(std::ldexp(a, j), std::ldexp(b, -j)));
  const PseudoOrbit po = palmer_assembly(v2(0, 0), seg, "010", f);
  const double in_gap = std::max(std::ldexp(std::abs(a), -m), std::ldexp(std::abs(b), m));
  const double out_gap = std::max(std::ldexp(std::abs(a), m + 1), std::ldexp(std::abs(b), -m - 1));
  EXPECT_DOUBLE_EQ(po.delta, std::max(in_gap, out_gap));
}

TEST(Palmer, Preconditions) {
  const MapSystem f = maps::hyperbolic_test_map();
  const std::vector<Vec> even(4, v2(0, 0));
  EXPECT_THROW(palmer_assembly(v2(0, 0), even, "01", f), PreconditionError);
  EXPECT_THROW(palmer_assembly(v2(0, 0), std::vector<Vec>(3, v2(0, 0)), "012", f), PreconditionError);
}

TEST(Palmer, DefectDecaysWithSegmentLength) {
  const MapSystem f = maps::mcmillan_map(0.5);
  const auto d = [&](int m) {
    return palmer_assembly(v2(0, 0), maps::mcmillan_segment(0.5, m), "0110", f).delta;
  };
  EXPECT_LT(d(10), d(5));
  EXPECT_LT(d(20), d(10));
}

TEST(McMillan, HomoclinicIsAnOrbit) {
  const MapSystem f = maps::mcmillan_map(0.8);
  const auto seg = maps::mcmillan_segment(0.8, 15);
  EXPECT_LT(is_pseudo_orbit(seg, f, 0.0).max_defect, 1e-15);
  EXPECT_LT(jacobian_fd_defect(f, v2(0.3, -0.6)), 1e-8);
  EXPECT_THROW(maps::mcmillan_map(0.0), PreconditionError);
}

TEST(FindShadow, LinearClosedForm) {
  const MapSystem f = maps::hyperbolic_test_map();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const int L = 30;
  std::vector<Vec> y(L, Vec(2));
  for (auto& v : y) v << u(rng), u(rng);
  const PseudoOrbit pseudo = PseudoOrbit::measured(y, f);
  const ShadowResult r = find_shadow(pseudo, f);
  for (int j = 0; j < L; ++j) {
    EXPECT_NEAR(r.orbit[j](0), std::ldexp(y[L - 1](0), j - L + 1), 1e-12);
    EXPECT_NEAR(r.orbit[j](1), std::ldexp(y[0](1), -j), 1e-12);
  }
  EXPECT_LE(r.epsilon, 2 * pseudo.delta);
  EXPECT_EQ(r.unstable_dimension, 1);
}

TEST(FindShadow, TrueOrbitUnchanged) {
  const MapSystem f = maps::mcmillan_map(0.5);
  const auto seg = maps::mcmillan_segment(0.5, 10);
  const ShadowResult r = find_shadow(PseudoOrbit::measured(seg, f), f);
  EXPECT_LT(r.epsilon, 1e-14);
}

TEST(FindShadow, OutputIsAnOrbit) {
  const MapSystem f = bent_saddle();
  EXPECT_LT(jacobian_fd_defect(f, v2(0.4, -1.2)), 1e-8);
  std::mt19937_64 rng(5);
  const PseudoOrbit po = PseudoOrbit::measured(scattered(40, 0.5, rng), f);
  const ShadowResult r = find_shadow(po, f);
  EXPECT_LT(is_pseudo_orbit(r.orbit, f, 1e-10).max_defect, 1e-10);
  EXPECT_LT(r.epsilon, 3 * po.delta);
}

TEST(FindShadow, EpsilonLinearInDelta) {
  const MapSystem f = bent_saddle();
  std::vector<double> ratio;
  for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
    std::mt19937_64 rng(9);
    const PseudoOrbit po = PseudoOrbit::measured(scattered(40, delta, rng), f);
    ratio.push_back(find_shadow(po, f).epsilon / po.delta);
  }
  for (double r : ratio) {
    EXPECT_GT(r, 0.0);
    EXPECT_LT(r, 3.0);
  }
  EXPECT_NEAR(ratio[2], ratio[3], 0.01 * ratio[3]);
}

TEST(FindShadow, NeedsJacobian) {
  MapSystem f = maps::hyperbolic_test_map();
  f.jacobian = nullptr;
  std::mt19937_64 rng(1);
  const PseudoOrbit po = PseudoOrbit::measured(scattered(5, 1e-3, rng), f);
  EXPECT_THROW(find_shadow(po, f), PreconditionError);
}

TEST(Hyperbolicity, DiagonalRates) {
  const MapSystem f = maps::hyperbolic_test_map();
  const DichotomyReport r = hyperbolicity_estimate(std::vector<Vec>(20, v2(0, 0)), f);
  ASSERT_EQ(r.rates.size(), 2u);
  EXPECT_NEAR(r.rates[0], std::log(2.0), 1e-14);
  EXPECT_NEAR(r.rates[1], -std::log(2.0), 1e-14);
  EXPECT_TRUE(r.hyperbolic);
  EXPECT_EQ(r.unstable_dimension, 1);
}

TEST(Hyperbolicity, RotationIsNotHyperbolic) {
  const MapSystem f = maps::rotation_map(0.3);
  const DichotomyReport r = hyperbolicity_estimate(iterate(f, v2(1, 0), 50), f);
  for (double rate : r.rates) EXPECT_LT(std::abs(rate), 1e-12);
  EXPECT_FALSE(r.hyperbolic);
}

TEST(Hyperbolicity, DashedLineSaddle) {
  const dashed::Params p{1.0, 0.0, 8};
  const double T = 0.5;
  const MapSystem f = maps::dashed_line_period_map(p, T, 50);
  const Vec x = maps::pack(dashed::fixed_point(p));
  const DichotomyReport r = hyperbolicity_estimate(std::vector<Vec>(1000, x), f, 1e-3, 250);

  const Eigen::MatrixXd J = dashed::model_jacobian(dashed::fixed_point(p), p);
  Eigen::EigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> re;
  for (int i = 0; i < J.rows(); ++i) re.push_back(es.eigenvalues()(i).real() * T);
  std::sort(re.rbegin(), re.rend());
  // the leading quadruple is a complex pair on each side; compare pair sums
  EXPECT_NEAR(r.rates[0] + r.rates[1], re[0] + re[1], 1e-6);
  EXPECT_NEAR(r.rates.end()[-1] + r.rates.end()[-2], re.end()[-1] + re.end()[-2], 1e-6);
}

TEST(FlowMap, JacobianMatchesDifferences) {
  const dashed::Params p{1.0, 0.3, 6};
  const MapSystem f = maps::dashed_line_period_map(p, 0.2, 20);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Vec x(f.dimension);
  for (int i = 0; i < x.size(); ++i) x(i) = 0.3 * g(rng);
  EXPECT_LT(jacobian_fd_defect(f, x), 1e-7);

  const nls::Params q{5, 4.0, 1.0, 10.0, 0.01};
  const MapSystem h = maps::nls_period_map(q, 0.002, 5);
  Vec z = maps::pack(nls::LatticeState::uniform(5, {1.0, 0.4}));
  for (int i = 0; i < z.size(); ++i) z(i) += 0.05 * g(rng);
  EXPECT_LT(jacobian_fd_defect(h, z), 1e-6);
}
