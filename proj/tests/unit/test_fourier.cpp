#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "chaoslab/coefficient_io.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/fourier.hpp"

using namespace chaoslab;

namespace {

CoefficientField random_field(int box, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CoefficientField f(box);
  for (int a = 0; a <= box; ++a)
    for (int b = -box; b <= box; ++b) {
      const WaveVector k{a, b};
      if (is_upper_half(k)) f.set(k, {g(rng), g(rng)});
    }
  return f;
}

}  // namespace

TEST(CoefA, HandValues) {
  EXPECT_DOUBLE_EQ(coef_A({1, 1}, {-2, -1}), -3.0 / 20.0);
  EXPECT_DOUBLE_EQ(coef_A({1, 1}, {-3, -2}), -11.0 / 52.0);
  EXPECT_DOUBLE_EQ(coef_A({1, 1}, {-1, 0}), 0.25);
  EXPECT_DOUBLE_EQ(coef_A({1, 0}, {2, 0}), 0.0);  // parallel
  EXPECT_DOUBLE_EQ(coef_A({1, 2}, {2, 1}), 0.0);  // equal norms
}

TEST(CoefA, ZeroArgumentThrows) {
  EXPECT_THROW(coef_A({0, 0}, {1, 0}), DomainError);
  EXPECT_THROW(coef_A({1, 0}, {0, 0}), DomainError);
}

TEST(CoefA, SwapAndZerosOverBox) {
  // Swapping p and q flips both the determinant and the norm difference,
  // so A itself is symmetric.
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b)
      for (int c = -10; c <= 10; ++c)
        for (int d = -10; d <= 10; ++d) {
          const WaveVector p{a, b}, q{c, d};
          if (p.is_zero() || q.is_zero() || p.norm2() > 100 || q.norm2() > 100) continue;
          ASSERT_EQ(determinant(q, p), -determinant(p, q));
          ASSERT_EQ(coef_A(p, q), coef_A(q, p));
          if (p.norm2() == q.norm2() || determinant(p, q) == 0) ASSERT_EQ(coef_A(p, q), 0.0);
          else ASSERT_NE(coef_A(p, q), 0.0);
        }
}

TEST(CoefficientField, SetKeepsConjugateSymmetry) {
  CoefficientField f(3);
  f.set({1, -2}, {0.5, 0.25});
  EXPECT_EQ(f({-1, 2}), std::conj(complex(0.5, 0.25)));
  EXPECT_EQ(f.symmetry_defect(), 0.0);
  EXPECT_EQ(f({0, 0}), complex{});
  EXPECT_EQ(f({7, 0}), complex{});
}

TEST(Galerkin, SingleModeIsStationary) {
  CoefficientField f(6);
  f.set({1, 1}, 1.3);
  EXPECT_EQ(galerkin_rhs(f).max_abs(), 0.0);
}

TEST(Galerkin, ShearPairIsStationary) {
  CoefficientField f(6);
  f.set({2, 1}, {0.3, -0.7});
  f.set({-2, -1}, {0.3, 0.7});
  EXPECT_LT(galerkin_rhs(f).max_abs(), 1e-15);
}

TEST(Galerkin, SingleModeQuadratics) {
  CoefficientField f(4);
  f.set({1, 1}, 1.0);
  EXPECT_DOUBLE_EQ(energy(f), 1.0);
  EXPECT_DOUBLE_EQ(enstrophy(f), 2.0);
}

TEST(Galerkin, RatesVanishForRandomStates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CoefficientField f = random_field(8, rng);
    const CoefficientField r = galerkin_rhs(f);
    const double scale = enstrophy(f) * r.max_abs() + 1.0;
    EXPECT_LT(std::abs(energy_rate(f, r)) / scale, 1e-12);
    EXPECT_LT(std::abs(enstrophy_rate(f, r)) / scale, 1e-12);
  }
}

TEST(Galerkin, RhsKeepsRealitySymmetry) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial)
    ASSERT_LT(galerkin_rhs(random_field(4, rng)).symmetry_defect(), 1e-14);
}

TEST(Galerkin, EvolutionDeterministic) {
  std::mt19937_64 rng(5);
  const CoefficientField f = 0.1 * random_field(4, rng);
  const CoefficientField a = evolve_galerkin(f, 1e-2, 50);
  const CoefficientField b = evolve_galerkin(f, 1e-2, 50);
  EXPECT_EQ(a.raw(), b.raw());
}

TEST(Classes, MembersSkipOrigin) {
  const auto m = class_members({{-3, -3}, {1, 1}}, 0, 6);
  ASSERT_EQ(m.size(), 6u);
  for (const auto& c : m) EXPECT_FALSE(c.k.is_zero());
  EXPECT_EQ(m[2].n, 2);
  EXPECT_EQ(m[3].n, 4);
}

TEST(Classes, MembersExample) {
  const auto m = class_members({{-3, -2}, {1, 1}}, -1, 1);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].k, (WaveVector{-4, -3}));
  EXPECT_EQ(m[2].k, (WaveVector{-2, -1}));
}

TEST(Classes, ZeroDirectionThrows) {
  EXPECT_THROW(class_members({{1, 0}, {0, 0}}, 0, 2), DomainError);
}

TEST(Zeta, Enumeration) {
  EXPECT_EQ(zeta({1, 1}), 4);
  EXPECT_EQ(zeta({1, 0}), 0);
  EXPECT_EQ(zeta({2, 1}), 12);
}

TEST(CoefficientIO, RoundTrip) {
  std::mt19937_64 rng(3);
  const CoefficientField f = random_field(5, rng);
  std::stringstream ss;
  save_coefficients(ss, f);
  const CoefficientField g = load_coefficients(ss);
  ASSERT_EQ(g.box(), 5);
  EXPECT_EQ(f.raw(), g.raw());
  EXPECT_EQ(coefficient_field_from_json(to_json(f)).raw(), f.raw());
}
