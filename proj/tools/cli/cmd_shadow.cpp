#include <algorithm>
#include <cmath>
#include <random>

#include "app.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/maps.hpp"
#include "chaoslab/shadowing.hpp"

namespace chaoslab::cli {
namespace {

using shadow::MapSystem;
using shadow::Vec;

struct ShadowArgs {
  std::string map = "linear-test";
  std::string word = "0110";
  int m = 10;
  double delta = 1e-3;
  double period = 0.0;  // 0: per-map default
  int map_steps = 0;    // 0: from the period and the map's step bound
  double gamma = 1.0;
  double epsilon = 0.0;
  int trunc = 8;
  int N = 8;
  double omega = 5.0;
  double alpha = 1.0;
  double beta = 20.0;
  double excursion = 0.0;
  double hyp_tol = 1e-3;
  double tolerance = 1e-13;
  int max_iterations = 50;
  int burn_in = 0;
};

struct Setup {
  MapSystem f;
  Vec x0;
  std::vector<Vec> segment;  // 2m+1 points
  double period = 0.0;
  int map_steps = 0;
};

int steps_for(double period, double max_dt) { return std::max(1, static_cast<int>(std::ceil(period / max_dt - 1e-9))); }

// Heteroclinic loop through the fixed point: the descending branch to -gamma
// followed by the ascending branch back, each centred in its half.
Setup dashed_setup(const ShadowArgs& a) {
  const dashed::Params p{a.gamma, a.epsilon, a.trunc};
  if (a.trunc < 5) throw PreconditionError("shadow dashed-line: trunc must be >= 5");
  const double period = a.period > 0.0 ? a.period : 8.0;
  const int steps = a.map_steps > 0 ? a.map_steps : steps_for(period, 0.04);
  Setup s{maps::dashed_line_period_map(p, period, steps), maps::pack(dashed::fixed_point(p)), {}, period, steps};
  const dashed::HeteroclinicParams down{0.0, 0.0, -1}, up{0.0, 0.0, 1};
  const double half = 0.5 * a.m;
  for (int j = -a.m; j <= a.m; ++j) {
    const bool first = j <= 0;
    const double t = first ? (j + half) * period : (j - half) * period;
    s.segment.push_back(maps::pack(dashed::to_state(dashed::analytic_heteroclinic(t, first ? down : up, a.gamma), a.trunc)));
  }
  return s;
}

// Blocks at the lattice saddle, or with a positive excursion the forward
// orbit leaving it along the leading unstable direction (a true orbit
// segment that does not return, so its joint gaps are large).
Setup nls_setup(const ShadowArgs& a) {
  const nls::Params p{a.N, a.omega, a.alpha, a.beta, a.epsilon};
  const nls::DiscreteSaddle saddle = nls::discrete_saddle(p);
  const double period = a.period > 0.0 ? a.period : 0.05;
  const int steps = a.map_steps > 0 ? a.map_steps : steps_for(period, 0.1 * p.h() * p.h());
  Setup s{maps::nls_period_map(p, period, steps), maps::pack(saddle.state), {}, period, steps};
  if (a.excursion == 0.0) {
    s.segment.assign(2 * a.m + 1, s.x0);
    return s;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(saddle.jacobian);
  int lead = 0;
  for (int i = 1; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i).real() > es.eigenvalues()(lead).real()) lead = i;
  Vec v = es.eigenvectors().col(lead).real();
  if (v.norm() == 0.0) v = es.eigenvectors().col(lead).imag();
  v /= v.cwiseAbs().maxCoeff();
  s.segment = shadow::iterate(s.f, s.x0 + a.excursion * v, 2 * a.m + 1);
  return s;
}

void write_points(RunContext& ctx, const std::string& name, const std::vector<Vec>& pts) {
  if (pts.empty()) return;
  std::vector<std::string> header{"j"};
  for (int i = 0; i < pts.front().size(); ++i) header.push_back("x" + std::to_string(i));
  Csv csv(header);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    std::vector<double> row{static_cast<double>(j)};
    row.insert(row.end(), pts[j].data(), pts[j].data() + pts[j].size());
    csv.row(row);
  }
  ctx.out.write_text(name, csv.str());
}

void run_shadow(const ShadowArgs& a, RunContext& ctx) {
  if (a.m < 1) throw PreconditionError("shadow: m must be >= 1");
  if (a.delta < 0.0) throw PreconditionError("shadow: delta must be >= 0");
  Setup s;
  if (a.map == "linear-test") {
    // no homoclinic orbit: every block sits at the fixed point
    s = {maps::hyperbolic_test_map(), Vec::Zero(2), {}, 1.0, 1};
    s.segment.assign(2 * a.m + 1, s.x0);
  } else if (a.map == "dashed-line") {
    s = dashed_setup(a);
  } else {
    s = ctx.timed("segment", [&] { return nls_setup(a); });
  }

  const shadow::PseudoOrbit assembled = shadow::palmer_assembly(s.x0, s.segment, a.word, s.f);
  std::vector<Vec> points = assembled.points;
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u(-a.delta, a.delta);
  if (a.delta > 0.0)
    for (Vec& y : points)
      for (int i = 0; i < y.size(); ++i) y(i) += u(rng);
  const shadow::PseudoOrbit pseudo = shadow::PseudoOrbit::measured(points, s.f);
  write_points(ctx, "shadow_pseudo.csv", pseudo.points);

  const shadow::DichotomyReport d =
      ctx.timed("dichotomy", [&] { return shadow::hyperbolicity_estimate(pseudo.points, s.f, a.hyp_tol * s.period, a.burn_in); });
  json report = {{"map", a.map},
                 {"word", a.word},
                 {"length", pseudo.points.size()},
                 {"period", s.period},
                 {"map_steps", s.map_steps},
                 {"assembly_delta", assembled.delta},
                 {"delta", pseudo.delta},
                 {"dichotomy",
                  {{"rates", d.rates},
                   {"unstable_dimension", d.unstable_dimension},
                   {"alpha", d.alpha},
                   {"K", d.K},
                   {"angle", d.angle},
                   {"hyperbolic", d.hyperbolic}}}};

  shadow::ShadowOptions opt;
  opt.tolerance = a.tolerance;
  opt.max_iterations = a.max_iterations;
  try {
    const shadow::ShadowResult r = ctx.timed("shadow", [&] { return shadow::find_shadow(pseudo, s.f, opt); });
    write_points(ctx, "shadow_orbit.csv", r.orbit);
    report["shadow"] = {{"converged", true},
                        {"epsilon", r.epsilon},
                        {"epsilon_over_delta", pseudo.delta > 0.0 ? r.epsilon / pseudo.delta : 0.0},
                        {"orbit_defect", r.orbit_defect},
                        {"unstable_dimension", r.unstable_dimension},
                        {"residual_history", r.residual_history}};
    if (a.map == "linear-test") {
      // x_j = (2^{j-L+1} y_{L-1,0}, 2^{-j} y_{0,1})
      const int L = static_cast<int>(points.size());
      double mismatch = 0.0;
      for (int j = 0; j < L; ++j) {
        mismatch = std::max(mismatch, std::abs(r.orbit[j](0) - std::ldexp(points[L - 1](0), j - L + 1)));
        mismatch = std::max(mismatch, std::abs(r.orbit[j](1) - std::ldexp(points[0](1), -j)));
      }
      report["shadow"]["closed_form_mismatch"] = mismatch;
    }
  } catch (const shadow::ShadowStagnation& e) {
    report["shadow"] = {{"converged", false}, {"residual_history", e.residual_history}};
    ctx.out.write_json("shadow_report.json", report);
    ctx.summary = report;
    throw;
  }
  ctx.out.write_json("shadow_report.json", report);
  ctx.summary = report;
}

}  // namespace

Command shadow_command(CLI::App& root) {
  auto a = std::make_shared<ShadowArgs>();
  Command c(root.add_subcommand("shadow", "Assemble a pseudo-orbit from a symbol word and find its shadow"));
  Options& o = *c.options;
  o.add("map", a->map, "linear-test, dashed-line or nls-poincare")
      ->check(CLI::IsMember({"linear-test", "dashed-line", "nls-poincare"}));
  o.add("word", a->word, "Symbol word over {0, 1}");
  o.add("m", a->m, "Half-length of each block");
  o.add("delta", a->delta, "Uniform noise amplitude added to every assembled point");
  o.add("period", a->period, "Flow time per map step (0: 8 for dashed-line, 0.05 for nls-poincare)");
  o.add("map-steps", a->map_steps, "RK4 steps per map step (0: smallest count within the step bound)");
  o.add("gamma", a->gamma, "dashed-line amplitude");
  o.add("epsilon", a->epsilon, "Perturbation size for either flow");
  o.add("trunc", a->trunc, "dashed-line modes");
  o.add("N", a->N, "Lattice size for nls-poincare");
  o.add("omega", a->omega, "nls-poincare frequency");
  o.add("alpha", a->alpha, "nls-poincare damping");
  o.add("beta", a->beta, "nls-poincare forcing");
  o.add("excursion", a->excursion, "nls-poincare offset along the unstable direction (0: stay at the saddle)");
  o.add("hyp-tol", a->hyp_tol, "Growth rates per unit time below this count as neutral");
  o.add("tolerance", a->tolerance, "Newton tolerance on the relative orbit residual");
  o.add("max-iterations", a->max_iterations, "Newton iteration cap");
  o.add("burn-in", a->burn_in, "Steps skipped by the growth-rate estimate");
  c.run = [a](RunContext& ctx) { run_shadow(*a, ctx); };
  return c;
}

}  // namespace chaoslab::cli
