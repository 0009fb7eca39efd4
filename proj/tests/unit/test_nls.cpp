#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "chaoslab/errors.hpp"
#include "chaoslab/nls.hpp"

using namespace chaoslab;
using namespace chaoslab::nls;

namespace {

LatticeState random_even(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<complex> q(static_cast<std::size_t>(N));
  for (int n = 0; n <= N / 2; ++n) q[n] = {g(rng), g(rng)};
  for (int n = N / 2 + 1; n < N; ++n) q[n] = q[N - n];
  return LatticeState::even(q);
}

// Independent transcription of the lattice equation, solved for dq/dt.
LatticeState reference_rhs(const LatticeState& s, const Params& p) {
  const int N = s.size();
  const double h2 = 1.0 / (p.h() * p.h());
  const complex I(0, 1);
  LatticeState d(N);
  for (int n = 0; n < N; ++n) {
    const complex qm = s.q[(n + N - 1) % N], q = s.q[n], qp = s.q[(n + 1) % N];
    const complex lap = h2 * (qp - 2.0 * q + qm);
    const complex rhs = lap + std::norm(q) * (qp + qm) - 2.0 * p.omega * p.omega * q +
                        I * p.epsilon * (-p.alpha * q + lap + p.beta);
    d.q[n] = -I * rhs;
  }
  return d;
}

double max_diff(const LatticeState& a, const LatticeState& b) {
  double m = 0.0;
  for (int n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a.q[n] - b.q[n]));
  return m;
}

Params window_params(int N, double eps) {
  const auto [lo, hi] = omega_window(N);
  return {N, 0.5 * (lo + hi), 1.0, 10.0, eps};
}

}  // namespace

TEST(Lattice, EvenConstruction) {
  EXPECT_THROW(LatticeState::even({1.0, 2.0, 3.0, 4.0}), PreconditionError);
  EXPECT_NO_THROW(LatticeState::even({1.0, 2.0, 3.0, 2.0}));
}

TEST(Lattice, UniformRhs) {
  const Params p{8, 4.0, 1.0, 5.0, 0.0};
  const complex c{0.7, -0.2};
  const LatticeState d = pdnls_rhs(LatticeState::uniform(8, c), p);
  const complex want = -complex(0, 1) * (2.0 * std::norm(c) * c - 2.0 * p.omega * p.omega * c);
  for (complex v : d.q) EXPECT_LT(std::abs(v - want), 1e-13);
}

TEST(Lattice, CircleOfFixedPoints) {
  const Params p{8, 4.0, 1.0, 5.0, 0.0};
  for (double phase : {0.0, 0.7, 2.0})
    EXPECT_LT(pdnls_rhs(LatticeState::uniform(8, std::polar(4.0, phase)), p).max_abs(), 1e-12);
}

TEST(Lattice, MatchesReference) {
  std::mt19937_64 rng(31);
  const Params p{8, 4.0, 1.3, 5.0, 0.2};
  for (int t = 0; t < 10; ++t) {
    const LatticeState s = random_even(8, rng);
    EXPECT_LT(max_diff(pdnls_rhs(s, p), reference_rhs(s, p)), 1e-14 * 64 * 10);
  }
}

TEST(Lattice, PreservesEvenness) {
  std::mt19937_64 rng(1);
  for (int N : {7, 8}) {
    const Params p{N, 4.0, 1.0, 5.0, 0.1};
    for (int t = 0; t < 20; ++t) EXPECT_LT(pdnls_rhs(random_even(N, rng), p).evenness_defect(), 1e-14);
  }
}

TEST(Lattice, PhaseEquivariance) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  const Params p{8, 4.0, 1.0, 5.0, 0.0};
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    LatticeState s = random_even(8, rng);
    const complex rot = std::polar(1.0, u(rng));
    LatticeState r = s;
    for (auto& v : r.q) v *= rot;
    LatticeState a = pdnls_rhs(s, p);
    for (auto& v : a.q) v *= rot;
    worst = std::max(worst, max_diff(pdnls_rhs(r, p), a) / (1.0 + a.max_abs()));
  }
  EXPECT_LT(worst, 1e-13);
}

TEST(Lattice, JacobianMatchesDifferences) {
  std::mt19937_64 rng(4);
  const Params p{7, 4.0, 1.0, 5.0, 0.05};
  const LatticeState s = random_even(7, rng);
  const Eigen::MatrixXd J = pdnls_jacobian(s, p);
  const double h = 1e-6;
  for (int c = 0; c < 14; ++c) {
    LatticeState a = s, b = s;
    const complex step = c < 7 ? complex(h, 0) : complex(0, h);
    a.q[c % 7] += step;
    b.q[c % 7] -= step;
    const LatticeState fa = pdnls_rhs(a, p), fb = pdnls_rhs(b, p);
    for (int r = 0; r < 7; ++r) {
      const complex d = (fa.q[r] - fb.q[r]) / (2 * h);
      EXPECT_NEAR(J(r, c), d.real(), 1e-6 * (1 + std::abs(d)));
      EXPECT_NEAR(J(r + 7, c), d.imag(), 1e-6 * (1 + std::abs(d)));
    }
  }
}

TEST(Lattice, Validation) {
  EXPECT_THROW(validate({2, 1.0, 1.0, 1.0, 0.0}), PreconditionError);
  EXPECT_THROW(validate({8, 4.0, -1.0, 1.0, 0.0}), PreconditionError);
  EXPECT_THROW(validate({8, 100.0, 1.0, 1.0, 0.0}), PreconditionError);
  EXPECT_NO_THROW(validate({8, 100.0, 1.0, 1.0, 0.0}, false));
  const auto [lo, hi] = omega_window(8);
  EXPECT_NEAR(lo, 8 * std::tan(std::numbers::pi / 8), 1e-14);
  EXPECT_NEAR(hi, 8.0, 1e-13);
}

TEST(Continuum, SaddleFormulas) {
  const SaddleInfo s0 = continuum_saddle({0.8, 1.0, 2.0, 0.0});
  EXPECT_DOUBLE_EQ(s0.I, 0.64);
  EXPECT_NEAR(s0.theta, std::acos(0.4), 1e-15);
  const SaddleInfo s1 = continuum_saddle({0.8, 1.0, 2.0, 0.01});
  EXPECT_NEAR(s1.I, 0.64 - 0.01 / 1.6 * std::sqrt(4.0 - 0.64), 1e-15);
  EXPECT_GT(s1.theta, 0.0);
  EXPECT_LT(s1.theta, std::numbers::pi / 2);
  EXPECT_THROW(continuum_saddle({0.8, 1.0, 0.8, 0.0}), DomainError);
  EXPECT_GT(continuum_saddle({0.8, 1.0, 1e8, 0.0}).theta, std::numbers::pi / 2 - 1e-7);
}

TEST(Continuum, Eigenvalues) {
  const ContinuumParams p{0.8, 1.0, 2.0, 0.0};
  const double I = p.omega * p.omega;
  const auto [a, b] = continuum_eigenvalues(0, p, I);
  EXPECT_EQ(std::abs(a), 0.0);
  EXPECT_EQ(std::abs(b), 0.0);
  const auto [c, d] = continuum_eigenvalues(1, p, I);
  EXPECT_NEAR(c.real(), 2 * std::sqrt(0.5 * 0.78), 1e-14);
  EXPECT_NEAR(c.real(), 1.24899, 1e-5);
  EXPECT_NEAR(d.real(), -c.real(), 1e-15);
  EXPECT_THROW(continuum_eigenvalues(-1, p, I), PreconditionError);
}

TEST(Continuum, RealityBranch) {
  for (int n = 0; n <= 4; ++n)
    for (double w = 0.55; w < 1.0; w += 0.05)
      for (double I = 0.1; I < 1.2; I += 0.07) {
        const ContinuumParams p{w, 1.0, 5.0, 0.0};
        const double prod = (n * n / 2.0 + w * w - I) * (3 * I - w * w - n * n / 2.0);
        const auto [lp, lm] = continuum_eigenvalues(n, p, I);
        if (prod >= 0) {
          EXPECT_EQ(lp.imag(), 0.0);
          EXPECT_EQ(lm.imag(), 0.0);
        } else {
          EXPECT_EQ(lp.real(), 0.0);
          EXPECT_GT(lp.imag(), 0.0);
        }
      }
}

TEST(Continuum, SilnikovFlags) {
  const ContinuumParams p{0.8, 1.0, 2.0, 0.01};
  const SaddleInfo s = continuum_saddle(p);
  const SilnikovReport r = silnikov_check(continuum_spectrum(p, s.I, 20));
  EXPECT_TRUE(r.two_positive);
  EXPECT_TRUE(r.lambda2_minimal);
  EXPECT_TRUE(r.lambda2_below_lambda0);
}

TEST(Continuum, SilnikovHandBuilt) {
  const std::vector<TaggedEigenvalue> eigs{{0, 1, 1.0}, {1, 1, 0.5}, {2, 1, -0.1}, {3, 1, -2.0}};
  EXPECT_TRUE(silnikov_check(eigs).all());
  const std::vector<TaggedEigenvalue> imag{{0, 1, {0, 1}}, {1, 1, {0, 2}}, {2, 1, {0, 3}}};
  const SilnikovReport r = silnikov_check(imag);
  EXPECT_FALSE(r.two_positive);
  EXPECT_FALSE(r.lambda2_minimal);
  EXPECT_FALSE(r.lambda2_below_lambda0);
}

TEST(SecondMeasurement, Values) {
  EXPECT_NEAR(second_measurement(1.0, 0.8, 1e-8), 0.8, 1e-12);
  EXPECT_NEAR(second_measurement(1.0, 0.8, std::numbers::pi), 0.8 * std::numbers::pi / 2, 1e-14);
  EXPECT_DOUBLE_EQ(second_measurement(1.0, 0.8, 1.3), second_measurement(1.0, 0.8, -1.3));
  EXPECT_THROW(second_measurement(1.0, 0.8, 2 * std::numbers::pi), DomainError);
}

TEST(DiscreteSaddle, Branch) {
  const Params p = window_params(7, 0.01);
  const DiscreteSaddle s = discrete_saddle(p);
  EXPECT_LT(std::norm(s.Q), p.omega * p.omega);
  EXPECT_GT(std::arg(s.Q), 0.0);
  EXPECT_LT(std::arg(s.Q), std::numbers::pi / 2);
  EXPECT_LT(pdnls_rhs(s.state, p).max_abs(), 1e-10);
  EXPECT_EQ(s.unstable_even, 2);
}

TEST(DiscreteSaddle, ZeroEpsilonPinsLimitPhase) {
  const Params p = window_params(7, 0.0);
  const DiscreteSaddle s = discrete_saddle(p);
  EXPECT_NEAR(std::abs(s.Q), p.omega, 1e-12);
  EXPECT_NEAR(std::arg(s.Q), std::acos(p.alpha * p.omega / p.beta), 1e-12);
}

TEST(DiscreteSaddle, EigenvaluesContinuousInEpsilon) {
  const int steps = 10;
  const double de = 0.02 / steps;
  std::vector<complex> prev = discrete_saddle(window_params(7, 0.0)).even_eigenvalues;
  for (int i = 1; i <= steps; ++i) {
    const std::vector<complex> cur = discrete_saddle(window_params(7, de * i)).even_eigenvalues;
    ASSERT_EQ(cur.size(), prev.size());
    // every eigenvalue has a partner within a few step sizes of the previous set
    for (complex l : cur) {
      double best = 1e300;
      for (complex m : prev) best = std::min(best, std::abs(l - m));
      EXPECT_LT(best, 10 * de * std::max(1.0, window_params(7, 0).omega * window_params(7, 0).omega));
    }
    prev = cur;
  }
}

TEST(Simulate, SaddleIsStationary) {
  const Params p = window_params(7, 0.01);
  const DiscreteSaddle s = discrete_saddle(p);
  const double dt = 0.1 * p.h() * p.h();
  const Trajectory t = simulate(s.state, p, dt, 1000, 1000);
  EXPECT_LT(max_diff(t.states.back(), s.state), 1e-10);
  EXPECT_THROW(simulate(s.state, p, dt * 1.01, 10), PreconditionError);
}

TEST(Simulate, UniformStaysUniform) {
  const Params p{8, 5.0, 1.0, 20.0, 0.0};
  const double dt = 0.1 * p.h() * p.h();
  const Trajectory t = simulate(LatticeState::uniform(8, {1.0, 0.5}), p, dt, 500, 50);
  for (const auto& s : t.states)
    for (complex v : s.q) EXPECT_EQ(std::abs(v), std::abs(s.q[0]));
}

TEST(Encode, Profiles) {
  const int N = 8;
  std::vector<complex> center(N, 1.0), wing(N, 1.0);
  center[4] = 2.0;
  wing[0] = 2.0;
  EXPECT_EQ(classify_profile(LatticeState::even(center)), 'C');
  EXPECT_EQ(classify_profile(LatticeState::even(wing)), 'W');
  EXPECT_EQ(classify_profile(LatticeState::uniform(N, 1.0)), '?');
  std::vector<complex> edge(N, 1.0);
  edge[2] = edge[6] = 2.0;
  EXPECT_EQ(classify_profile(LatticeState::even(edge)), '?');
}

TEST(Encode, CompressionAndSwap) {
  const int N = 8;
  std::vector<complex> c(N, 1.0), w(N, 1.0);
  c[4] = 2.0;
  w[0] = 2.0;
  const LatticeState C = LatticeState::even(c), W = LatticeState::even(w);
  std::vector<LatticeState> samples;
  for (int i = 0; i < 6; ++i) samples.push_back(C);
  for (int i = 0; i < 2; ++i) samples.push_back(W);  // too short to count
  for (int i = 0; i < 6; ++i) samples.push_back(C);
  for (int i = 0; i < 6; ++i) samples.push_back(W);
  const Encoding e = center_wing_encode(samples);
  EXPECT_EQ(e.compressed, "CW");
  EXPECT_EQ(e.alternations(), 1);

  std::vector<LatticeState> translated;
  for (const auto& s : samples) translated.push_back(half_period_translate(s));
  const Encoding t = center_wing_encode(translated);
  EXPECT_EQ(t.raw, swap_symbols(e.raw));
  EXPECT_EQ(t.compressed, swap_symbols(e.compressed));
}

TEST(Encode, EquivarianceOnTrajectory) {
  std::ifstream in(CHAOSLAB_CONFIG_DIR "/center_wing.json");
  ASSERT_TRUE(in.good());
  const auto j = nlohmann::json::parse(in);
  const Params p{j.at("N"), j.at("omega"), j.at("alpha"), j.at("beta"), j.at("epsilon")};
  const DiscreteSaddle s = discrete_saddle(p);
  LatticeState s0 = s.state;
  const int mode = j.at("perturbation_mode");
  const double amp = j.at("perturbation");
  for (int n = 0; n < p.N; ++n) s0.q[n] += amp * std::cos(2 * std::numbers::pi * mode * n / p.N);
  const Trajectory t = simulate(s0, p, j.at("dt"), 20000, 5);
  std::vector<LatticeState> translated;
  for (const auto& x : t.states) translated.push_back(half_period_translate(x));
  EXPECT_EQ(center_wing_encode(translated).raw, swap_symbols(center_wing_encode(t.states).raw));
}
