#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "chaoslab/sets.hpp"
#include "chaoslab/spectra.hpp"

using namespace chaoslab;

namespace {

const ClassIndex kUnstable{{-3, -2}, {1, 1}};
// 40-digit continued-fraction root at depth 1600 (mpmath).
const complex kConverged{0.2482230180411067109438467, 0.3517207645854475115958122};
const complex kPublished{0.24822302478255, 0.35172076526520};

complex seed_eigenvalue(const SpectrumReport& r) {
  complex best{};
  for (complex l : r.eigenvalues)
    if (l.real() > 0 && l.imag() > 0 && l.real() > best.real()) best = l;
  return best;
}

double max_abs_real(const SpectrumReport& r) {
  double m = 0.0;
  for (complex l : r.eigenvalues) m = std::max(m, std::abs(l.real()));
  return m;
}

}  // namespace

TEST(ClassOperator, Structure) {
  const ClassOperator op = build_class_operator(kUnstable, 2.0, 10);
  EXPECT_EQ(op.dimension(), 21);
  EXPECT_FALSE(op.degenerate);
  EXPECT_THROW(build_class_operator(kUnstable, 2.0, 0), PreconditionError);
  EXPECT_THROW(build_class_operator({{1, 0}, {0, 0}}, 2.0, 5), DomainError);
}

TEST(ClassOperator, OriginSlotDropped) {
  const ClassOperator op = build_class_operator({{-2, -2}, {1, 1}}, 1.0, 5);
  EXPECT_EQ(op.dimension(), 10);
  for (WaveVector k : op.modes) EXPECT_FALSE(k.is_zero());
}

TEST(Spectrum, BenchmarkEigenvalue) {
  const ClassOperator op = build_class_operator(kUnstable, 2.0, 50);
  const SpectrumReport r = truncated_spectrum(op);
  EXPECT_EQ(r.spectrum_case, SpectrumCase::MixedPointSpectrum);
  const complex lam = continued_fraction_eigen(op, seed_eigenvalue(r));
  EXPECT_LT(std::abs(lam - kConverged), 1e-12);
  EXPECT_LT(std::abs(lam - kPublished), 1e-8);
}

TEST(Spectrum, DenseAgreesWithRefinedAtLargeTruncation) {
  const ClassOperator op = build_class_operator(kUnstable, 2.0, 400);
  const SpectrumReport r = truncated_spectrum(op);
  EXPECT_LT(std::abs(seed_eigenvalue(r) - kConverged), 1e-9);
}

TEST(Spectrum, BValue) {
  const SpectrumReport r = truncated_spectrum(build_class_operator(kUnstable, 2.0, 10));
  // det((1,1),(-3,-2)) = 1, so b = -|Gamma| / 4.
  EXPECT_DOUBLE_EQ(r.b.real(), -0.5);
  EXPECT_EQ(r.zeta_bound, 4);
}

TEST(Spectrum, ZeroGammaIsZeroOperator) {
  const ClassOperator op = build_class_operator(kUnstable, 0.0, 20);
  for (complex l : truncated_spectrum(op).eigenvalues) EXPECT_EQ(std::abs(l), 0.0);
  EXPECT_EQ(std::abs(continued_fraction_eigen(op, {0.3, 0.1})), 0.0);
}

TEST(Spectrum, QuadrupleCount) {
  for (int trunc : {50, 100, 200}) {
    const SpectrumReport r = truncated_spectrum(build_class_operator(kUnstable, 2.0, trunc));
    EXPECT_EQ(count_nonimaginary(r, default_nonimaginary_tolerance(2.0)), 4) << trunc;
    EXPECT_LT(quadruple_symmetry_defect(r), 1e-8);
  }
}

TEST(Spectrum, CountPreconditions) {
  SpectrumReport empty;
  EXPECT_EQ(count_nonimaginary(empty, 0.1), 0);
  EXPECT_EQ(quadruple_symmetry_defect(empty), 0.0);
  EXPECT_THROW(count_nonimaginary(empty, 0.0), PreconditionError);
}

TEST(Spectrum, ContinuousOnlyClassDecays) {
  const ClassIndex cls{{10, 0}, {1, 1}};
  EXPECT_FALSE(meets_closed_disk(cls));
  double previous = 1e300;
  for (int trunc : {25, 50, 100}) {
    const ClassOperator op = build_class_operator(cls, 2.0, trunc);
    const SpectrumReport r = truncated_spectrum(op);
    EXPECT_EQ(r.spectrum_case, SpectrumCase::ContinuousOnly);
    const double m = max_abs_real(r);
    const double floor = 1e-12 * op.matrix().norm();
    EXPECT_LE(m, previous + floor) << trunc;
    previous = m;
    if (trunc >= 100) EXPECT_EQ(count_nonimaginary(r, 0.1), 0);
  }
}

TEST(Spectrum, BoundedByTwiceZeta) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> d(-6, 6);
  for (WaveVector p : {WaveVector{1, 1}, WaveVector{2, 1}, WaveVector{1, 0}}) {
    for (int c = 0; c < 10; ++c) {
      WaveVector k{d(rng), d(rng)};
      if (determinant(p, k) == 0) k = k + WaveVector{p.k2, -p.k1} + WaveVector{1, 0};
      if (determinant(p, k) == 0) continue;
      const SpectrumReport r = truncated_spectrum(build_class_operator({k, p}, 2.0, 100));
      EXPECT_LE(count_nonimaginary(r, default_nonimaginary_tolerance(2.0)), 2 * zeta(p));
    }
  }
}

TEST(Spectrum, GammaPhaseInvariance) {
  const auto a = truncated_spectrum(build_class_operator(kUnstable, {2.0, 0.0}, 40));
  const auto b = truncated_spectrum(build_class_operator(kUnstable, {0.0, 2.0}, 40));
  EXPECT_LT(hausdorff_distance(a.eigenvalues, b.eigenvalues), 1e-10);
}

TEST(ContinuedFraction, FixedPoint) {
  const ClassOperator op = build_class_operator(kUnstable, 2.0, 50);
  const complex lam = continued_fraction_eigen(op, seed_eigenvalue(truncated_spectrum(op)));
  EXPECT_LT(std::abs(continued_fraction_eigen(op, lam) - lam), 1e-13);
}

TEST(ContinuedFraction, DivergenceCarriesIterate) {
  const ClassOperator op = build_class_operator(kUnstable, 2.0, 50);
  ContinuedFractionOptions o;
  o.max_iterations = 1;
  o.tolerance = 1e-300;
  try {
    continued_fraction_eigen(op, {3.0, 5.0}, o);
    FAIL() << "expected NewtonDivergence";
  } catch (const NewtonDivergence& e) {
    EXPECT_TRUE(std::isfinite(e.last_iterate.real()));
  }
}

TEST(SpectralMapping, RandomTridiagonal) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const int n = 30;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = {g(rng), g(rng)};
    if (i + 1 < n) m(i, i + 1) = {g(rng), g(rng)}, m(i + 1, i) = {g(rng), g(rng)};
  }
  EXPECT_LT(spectral_mapping_check(m, 1.0), 1e-8);
  EXPECT_LT(spectral_mapping_check(m, 1e-6), 1e-8);
  EXPECT_THROW(spectral_mapping_check(m, 0.0), PreconditionError);
}

TEST(SpectralMapping, ClassOperator) {
  EXPECT_LT(spectral_mapping_check(build_class_operator(kUnstable, 2.0, 30), 1.0), 1e-8);
  EXPECT_EQ(spectral_mapping_check(build_class_operator(kUnstable, 0.0, 30), 1.0), 0.0);
}

TEST(Symmetry, RealSkewMatrix) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  Eigen::MatrixXd s(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) s(i, j) = g(rng);
  // spectrum +-i mu, closed under negation and conjugation
  const Eigen::MatrixXcd h = (s - s.transpose()).cast<complex>();
  EXPECT_LT(quadruple_symmetry_defect(eigenvalues(h)), 1e-10);
}
