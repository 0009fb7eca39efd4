#include <cmath>
#include <fstream>
#include <random>

#include "app.hpp"
#include "chaoslab/darboux.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/lax.hpp"
#include "chaoslab/random_fields.hpp"

namespace chaoslab::cli {
namespace {

struct LaxArgs {
  std::string which = "jacobi";
  int resolution = 64;
  double T = 1.0;
  double dt = 1e-2;
  int band = 5;
  int samples = 5;
  int box = 4;
  double amplitude = 0.01;
  double decay = 2.0;
  double beta = 1.0;
};

GridField2D zero_mean(GridField2D f) {
  f -= GridField2D::constant(f.resolution(), f.mean());
  return f;
}

lax::LaxReport jacobi_case(const LaxArgs& a, std::mt19937_64& rng) {
  lax::LaxReport r;
  double worst = 0.0;
  for (int i = 0; i < a.samples; ++i) {
    const GridField2D x = random_band_limited(a.resolution, a.band, rng);
    const GridField2D y = random_band_limited(a.resolution, a.band, rng);
    const GridField2D z = random_band_limited(a.resolution, a.band, rng);
    const double d = lax::jacobi_defect(x, y, z).max_abs();
    r.residuals["jacobi[" + std::to_string(i) + "]"] = d;
    worst = std::max(worst, d);
  }
  r.residuals["jacobi"] = worst;
  return r;
}

lax::LaxReport compat_case(const LaxArgs& a, std::mt19937_64& rng) {
  const GridField2D omega = zero_mean(random_band_limited(a.resolution, a.band, rng));
  std::vector<GridField2D> phis;
  for (int i = 0; i < a.samples; ++i) phis.push_back(random_band_limited(a.resolution, a.band, rng));
  lax::LaxReport r = lax::compatibility_residual_2d(omega, phis);
  const lax::LaxReport wrong =
      lax::compatibility_residual_2d(omega, phis, [](const GridField2D& w) { return w; });
  r.residuals["transport_wrong_rule"] = wrong.residuals.at("transport");
  r.flags["wrong_rule_detected"] = wrong.residuals.at("transport") > 1e-3;
  return r;
}

lax::LaxReport isospec_case(const LaxArgs& a, std::mt19937_64& rng) {
  CoefficientField w = random_coefficients(a.box, rng, a.decay);
  const double scale = a.amplitude / w.max_abs();
  w *= scale;
  lax::LaxReport r = lax::isospectrality_check(w, a.T, a.dt);
  // soft threshold, reported only: truncation does not commute with the evolution
  r.flags["hausdorff_below_1e-3"] = r.residuals.at("hausdorff") < 1e-3;
  CoefficientField steady(a.box);
  steady.set({1, 1}, a.amplitude);
  r.residuals["steady_hausdorff"] = lax::isospectrality_check(steady, a.T, a.dt).residuals.at("hausdorff");
  return r;
}

lax::LaxReport rossby_case(const LaxArgs& a, std::mt19937_64& rng) {
  const int n = a.resolution;
  const GridField2D omega = random_band_limited(n, a.band, rng);
  const GridField2D phi = random_band_limited(n, a.band, rng);
  const auto cosx = GridField2D::sample(n, [](double x, double) { return std::cos(x); });
  const auto sinx = GridField2D::sample(n, [](double x, double) { return std::sin(x); });
  lax::LaxReport r;
  r.residuals["beta_term"] = sup_distance(lax::rossby_L(GridField2D(n), a.beta, cosx), a.beta * sinx);
  r.residuals["beta_zero_reduction"] = sup_distance(lax::rossby_L(omega, 0.0, phi), lax::lax_L_2d(omega, phi));
  r.residuals["constant_kernel"] = lax::rossby_L(omega, a.beta, GridField2D::constant(n, 1.0)).max_abs();
  return r;
}

GridField3D random_trig3(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> k(-3, 3);
  struct Term {
    int a, b, c;
    double amp, phase;
  };
  std::vector<Term> terms;
  for (int i = 0; i < 4; ++i) {
    const int ka = k(rng), kb = k(rng), kc = k(rng);
    const double amp = g(rng), phase = g(rng);
    terms.push_back({ka, kb, kc, amp, phase});
  }
  return GridField3D::sample(n, [&](double x, double y, double z) {
    double s = 0.0;
    for (const Term& t : terms) s += t.amp * std::cos(t.a * x + t.b * y + t.c * z + t.phase);
    return s;
  });
}

lax::LaxReport scalar3_case(const LaxArgs& a, std::mt19937_64& rng) {
  const int n = a.resolution;
  const VectorField3D u = lax::abc_flow(n);
  lax::LaxReport r;
  r.residuals["divergence"] = lax::divergence_defect(u);
  r.residuals["curl"] = lax::curl_defect(u, u);
  const VectorField3D omega = curl(u);
  double worst = 0.0;
  for (int i = 0; i < a.samples; ++i) {
    const auto [L, A] = lax::lax_3d_scalar(omega, u, random_trig3(n, rng));
    worst = std::max(worst, (L - A).max_abs());
  }
  r.residuals["beltrami_L_minus_A"] = worst;
  const auto [L0, A0] = lax::lax_3d_scalar(u, u, GridField3D::sample(n, [](double, double, double) { return 1.0; }));
  r.residuals["constant_kernel"] = std::max(L0.max_abs(), A0.max_abs());
  return r;
}

lax::LaxReport vector3_case(const LaxArgs& a) {
  const int n = a.resolution;
  const VectorField3D u = lax::abc_flow(n);
  lax::LaxReport r;
  const auto [L, A] = lax::lax_3d_vector(u, u, u);
  r.residuals["self_L"] = L.max_abs();
  r.residuals["self_A"] = A.max_abs();
  const auto e1 = VectorField3D::sample(n, [](double, double, double) { return std::array<double, 3>{1, 0, 0}; });
  const auto [L1, A1] = lax::lax_3d_vector(u, u, e1);
  VectorField3D want;
  for (int i = 0; i < 3; ++i) want.c[i] = -1.0 * derivative(u.c[i], 0);
  r.residuals["uniform_direction"] = (L1 - want).max_abs();
  return r;
}

void run_lax(const LaxArgs& a, RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const lax::LaxReport r = ctx.timed("check", [&] {
    if (a.which == "jacobi") return jacobi_case(a, rng);
    if (a.which == "compat2d") return compat_case(a, rng);
    if (a.which == "isospec") return isospec_case(a, rng);
    if (a.which == "rossby") return rossby_case(a, rng);
    if (a.which == "3dscalar") return scalar3_case(a, rng);
    return vector3_case(a);
  });
  json report = lax::to_json(r);
  report["case"] = a.which;
  ctx.out.write_json("lax_report.json", report);
  report.erase("spectra");
  ctx.summary = report;
}

struct DarbouxArgs {
  std::string construction = "shear-power";
  double c = 0.3;
  std::string file;
  int resolution = 64;
  double rel_tol = 1e-2;
  double max_masked = 0.5;
};

void run_darboux(const DarbouxArgs& a, RunContext& ctx) {
  darboux::Construction k;
  if (a.construction == "shear-power") {
    k = darboux::shear_power(a.resolution, a.c);
  } else {
    if (a.file.empty()) throw PreconditionError("darboux custom-file: --file is required");
    std::ifstream in(a.file);
    if (!in) throw PreconditionError("darboux: cannot read '" + a.file + "'");
    k = darboux::load_construction(in, a.resolution);
  }
  const darboux::GaugeOptions opt{a.rel_tol, a.max_masked};
  const lax::LaxReport r = ctx.timed("verify", [&] { return darboux::verify_darboux(k.omega, k.psi, k.F, k.p, k.f, opt); });
  json report = lax::to_json(r);
  report["construction"] = a.construction;
  ctx.out.write_json("darboux_report.json", report);
  ctx.summary = report;
}

}  // namespace

Command lax_command(CLI::App& root) {
  auto a = std::make_shared<LaxArgs>();
  Command c(root.add_subcommand("lax-check", "Numerical checks of the Lax pair identities"));
  Options& o = *c.options;
  o.add("case", a->which, "jacobi, compat2d, isospec, rossby, 3dscalar or 3dvector")
      ->check(CLI::IsMember({"jacobi", "compat2d", "isospec", "rossby", "3dscalar", "3dvector"}));
  o.add("resolution", a->resolution, "Grid points per side");
  o.add("T", a->T, "Evolution time for isospec");
  o.add("dt", a->dt, "Step for isospec");
  o.add("band", a->band, "Mode band of random 2D fields");
  o.add("samples", a->samples, "Random test functions per check");
  o.add("box", a->box, "Mode box for isospec");
  o.add("amplitude", a->amplitude, "Largest coefficient for isospec");
  o.add("decay", a->decay, "Random amplitudes exp(-|k|^2 / decay) for isospec");
  o.add("beta", a->beta, "Planetary vorticity gradient for rossby");
  c.run = [a](RunContext& ctx) { run_lax(*a, ctx); };
  return c;
}

Command darboux_command(CLI::App& root) {
  auto a = std::make_shared<DarbouxArgs>();
  Command c(root.add_subcommand("darboux", "Verify a Darboux transformation on the grid"));
  Options& o = *c.options;
  o.add("construction", a->construction, "shear-power or custom-file")
      ->check(CLI::IsMember({"shear-power", "custom-file"}));
  o.add("c", a->c, "Shift amplitude for shear-power");
  o.add("file", a->file, "JSON construction for custom-file");
  o.add("resolution", a->resolution, "Grid points per side");
  o.add("rel-tol", a->rel_tol, "Relative threshold for masking small derivatives");
  o.add("max-masked", a->max_masked, "Largest tolerated masked fraction");
  c.run = [a](RunContext& ctx) { run_darboux(*a, ctx); };
  return c;
}

}  // namespace chaoslab::cli
