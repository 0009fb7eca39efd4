#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "chaoslab/darboux.hpp"
#include "chaoslab/errors.hpp"

using namespace chaoslab;
using namespace chaoslab::darboux;

namespace {

GridField2D of_shear(int n, double (*g)(double)) {
  return GridField2D::sample(n, [g](double x, double y) { return g(x + y); });
}

}  // namespace

TEST(Gauge, ShearPowerGivesOmega) {
  const Construction k = shear_power(64, 0.3);
  const GaugeResult g = darboux_gauge(k.p, k.f, k.omega);
  double err = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      if (g.valid(i, j)) err = std::max(err, std::abs(g.p_tilde(i, j) - k.omega(i, j)));
  EXPECT_LT(err, 1e-10);
  EXPECT_LT(g.form_defect, 1e-8);
  EXPECT_GT(g.masked_fraction, 0.0);
  EXPECT_LT(g.masked_fraction, 0.1);
}

TEST(Gauge, EqualInputsGiveZero) {
  const Construction k = shear_power(32, 0.3);
  const GaugeResult g = darboux_gauge(k.p, k.p, k.omega);
  EXPECT_EQ(g.p_tilde.max_abs(), 0.0);
}

TEST(Gauge, FormsAgreeOnSteadyFamilies) {
  // p = G(Omega), f = H(Omega) for Omega a function of a x + b y, so that
  // {Omega, p} = {Omega, f} = 0 holds exactly.
  const int n = 64;
  int tested = 0;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 5 && tested < 10; ++b) {
      const auto om = GridField2D::sample(n, [a, b](double x, double y) { return 3.0 + std::sin(a * x + b * y); });
      GridField2D p = pointwise_product(om, pointwise_product(om, om));
      GridField2D f = om;
      f += GridField2D::constant(n, 0.5 * b);
      const GaugeResult g = darboux_gauge(p, f, om);
      EXPECT_LT(g.form_defect, 1e-8) << a << "," << b;
      ++tested;
    }
  EXPECT_EQ(tested, 10);
}

TEST(Gauge, MaskLimit) {
  const int n = 32;
  const auto om = GridField2D::sample(n, [](double, double y) { return std::cos(y); });  // Omega_x = 0
  EXPECT_THROW(darboux_gauge(om, GridField2D::constant(n, 1.0), om), DomainError);
  EXPECT_THROW(darboux_gauge(om, om, GridField2D(16)), PreconditionError);
}

TEST(Potentials, ParallelShiftIsValid) {
  const int n = 32;
  const auto om = of_shear(n, [](double s) { return 2.0 * std::cos(s); });
  const auto psi = of_shear(n, [](double s) { return -std::cos(s); });
  const auto F = of_shear(n, [](double s) { return 0.4 * std::cos(s); });
  const PotentialTransform t = darboux_potentials(om, psi, F);
  EXPECT_TRUE(t.valid);
  EXPECT_LT(t.constraint_omega, 1e-12);
  EXPECT_LT(t.constraint_self, 1e-12);
  EXPECT_LT(sup_distance(t.omega_tilde, om - 2.0 * F), 1e-13);
  EXPECT_LT(sup_distance(t.psi_tilde, psi + F), 1e-15);
}

TEST(Potentials, ZeroShiftIsIdentity) {
  const Construction k = shear_power(32, 0.0);
  const PotentialTransform t = darboux_potentials(k.omega, k.psi, GridField2D(32));
  EXPECT_TRUE(t.valid);
  EXPECT_EQ(sup_distance(t.omega_tilde, k.omega), 0.0);
  EXPECT_EQ(sup_distance(t.psi_tilde, k.psi), 0.0);
}

TEST(Potentials, CrossShiftIsInvalid) {
  const int n = 32;
  const auto om = of_shear(n, [](double s) { return std::cos(s); });
  const auto F = GridField2D::sample(n, [](double x, double) { return std::cos(x); });
  const PotentialTransform t = darboux_potentials(om, invert_laplacian(om), F);
  EXPECT_FALSE(t.valid);
  EXPECT_GT(t.constraint_omega, 0.1);
}

TEST(Verify, ShearPower) {
  for (double c : {0.0, 0.3, -0.7}) {
    const Construction k = shear_power(64, c);
    const auto r = verify_darboux(k.omega, k.psi, k.F, k.p, k.f);
    EXPECT_LT(r.residuals.at("constraint_omega"), 1e-9);
    EXPECT_LT(r.residuals.at("constraint_self"), 1e-9);
    EXPECT_LT(r.residuals.at("d1"), 1e-8) << c;
    EXPECT_LT(r.residuals.at("d2"), 1e-8) << c;
    EXPECT_TRUE(r.flags.at("d1_below_1e-8"));
  }
}

TEST(Verify, EqualInputsGiveZero) {
  const Construction k = shear_power(64, 0.3);
  const auto r = verify_darboux(k.omega, k.psi, k.F, k.p, k.p);
  EXPECT_EQ(r.residuals.at("p_tilde_max"), 0.0);
  EXPECT_EQ(r.residuals.at("d1"), 0.0);
}

TEST(Verify, ListsEveryFailedPrecondition) {
  Construction k = shear_power(32, 0.3);
  k.p = GridField2D::sample(32, [](double x, double) { return 2.0 + std::cos(x); });
  k.F = GridField2D::sample(32, [](double x, double) { return std::cos(x); });
  try {
    verify_darboux(k.omega, k.psi, k.F, k.p, k.f);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("pre_omega_p"), std::string::npos);
    EXPECT_NE(what.find("pre_psi_p"), std::string::npos);
    EXPECT_NE(what.find("constraint_omega"), std::string::npos);
    EXPECT_EQ(what.find("pre_omega_f"), std::string::npos);
  }
}

TEST(Construction, FromJson) {
  std::istringstream in(R"({
    "omega": {"constant": 2, "terms": [{"k": [1, 1], "cos": 1}]},
    "F": {"terms": [{"k": [1, 1], "cos": 0.3}]},
    "p": {"constant": 4.5, "terms": [{"k": [1, 1], "cos": 4}, {"k": [2, 2], "cos": 0.5}]},
    "f": {"constant": 2, "terms": [{"k": [1, 1], "cos": 1}]}
  })");
  const Construction k = load_construction(in, 32);
  const Construction want = shear_power(32, 0.3);
  EXPECT_LT(sup_distance(k.omega, want.omega), 1e-14);
  EXPECT_LT(sup_distance(k.psi, want.psi), 1e-14);
  EXPECT_LT(sup_distance(k.p, want.p), 1e-13);
  EXPECT_LT(sup_distance(k.F, want.F), 1e-14);

  std::istringstream missing(R"({"omega": {"constant": 1}})");
  EXPECT_THROW(load_construction(missing, 32), PreconditionError);
  std::istringstream bad(R"({"omega": {"terms": [{"k": [1]}]}, "F": {}, "p": {}, "f": {}})");
  EXPECT_THROW(load_construction(bad, 32), PreconditionError);
}
