#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chaoslab/errors.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/sets.hpp"

using namespace chaoslab;

TEST(Grid, BracketOfCosines) {
  const int n = 32;
  const auto f = GridField2D::sample(n, [](double x, double) { return std::cos(x); });
  const auto g = GridField2D::sample(n, [](double, double y) { return std::cos(y); });
  const auto want = GridField2D::sample(n, [](double x, double y) { return std::sin(x) * std::sin(y); });
  EXPECT_LT(sup_distance(grid_bracket(f, g), want), 1e-13);
  EXPECT_LT(sup_distance(pointwise_bracket(f, g), want), 1e-13);
}

TEST(Grid, BracketAntisymmetric) {
  const int n = 32;
  const auto f = GridField2D::sample(n, [](double x, double y) { return std::sin(2 * x + y); });
  const auto g = GridField2D::sample(n, [](double x, double y) { return std::cos(x - 3 * y); });
  EXPECT_LT((grid_bracket(f, g) + grid_bracket(g, f)).max_abs(), 1e-13);
}

TEST(Grid, BracketResolutionMismatchThrows) {
  EXPECT_THROW(grid_bracket(GridField2D(16), GridField2D(32)), PreconditionError);
}

TEST(Grid, InvertLaplacian) {
  const int n = 32;
  const auto f = GridField2D::sample(n, [](double x, double y) { return std::cos(x + y); });
  const auto want = GridField2D::sample(n, [](double x, double y) { return -0.5 * std::cos(x + y); });
  EXPECT_LT(sup_distance(invert_laplacian(f), want), 1e-14);
  EXPECT_LT(sup_distance(laplacian(invert_laplacian(f)), f), 1e-13);
  EXPECT_THROW(invert_laplacian(GridField2D::constant(n, 1.0)), DomainError);
}

TEST(Grid, Derivatives) {
  const int n = 64;
  const auto f = GridField2D::sample(n, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
  const auto fxy = GridField2D::sample(n, [](double x, double y) { return -6 * std::cos(3 * x) * std::sin(2 * y); });
  EXPECT_LT(sup_distance(derivative(f, 1, 1), fxy), 1e-12);
}

TEST(Grid, CoefficientRoundTrip) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  CoefficientField c(6);
  for (int a = 0; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      if (is_upper_half({a, b})) c.set({a, b}, {g(rng), g(rng)});
  const CoefficientField back = to_coefficients(to_grid(c, 32), 6);
  double err = 0.0;
  c.for_each_mode([&](WaveVector k, complex v) { err = std::max(err, std::abs(back(k) - v)); });
  EXPECT_LT(err, 1e-13);
}

TEST(Grid, DealiasRemovesHighModes) {
  const int n = 32;
  const auto hi = GridField2D::sample(n, [](double x, double) { return std::cos(12 * x); });
  const auto lo = GridField2D::sample(n, [](double, double y) { return std::sin(3 * y); });
  EXPECT_LT(sup_distance(dealias(hi + lo), lo), 1e-13);
}

TEST(Grid3D, CurlAndDivergence) {
  const int n = 16;
  const auto u = VectorField3D::sample(n, [](double x, double y, double z) {
    return std::array<double, 3>{std::sin(y), std::sin(z), std::sin(x)};
  });
  const auto want = VectorField3D::sample(n, [](double x, double y, double z) {
    return std::array<double, 3>{-std::cos(z), -std::cos(x), -std::cos(y)};
  });
  EXPECT_LT((curl(u) - want).max_abs(), 1e-13);
  EXPECT_LT(divergence(u).max_abs(), 1e-13);
}

TEST(Sets, Hausdorff) {
  using c = std::complex<double>;
  EXPECT_EQ(hausdorff_distance({}, {}), 0.0);
  EXPECT_TRUE(std::isinf(hausdorff_distance({c{1, 0}}, {})));
  EXPECT_DOUBLE_EQ(hausdorff_distance({c{0, 0}, c{1, 0}}, {c{0, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_set(c{0, 3}, {c{0, 0}, c{0, 1}}), 2.0);
}
