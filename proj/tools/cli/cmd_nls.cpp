#include <cmath>
#include <numbers>

#include "app.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/nls.hpp"

namespace chaoslab::cli {
namespace {

using nls::complex;

struct NlsSimArgs {
  int N = 8;
  double omega = 5.0;
  double alpha = 1.0;
  double beta = 20.0;
  double epsilon = 1e-3;
  double perturbation = 1e-3;
  int perturbation_mode = 1;
  double dt = 0.0015625;
  long steps = 100000;
  long sample_every = 5;
  bool encode = false;
  double flat_tol = 1e-3;
  double tie_tol = 1e-12;
  int persistence = 10;
};

json eigen_table(const std::vector<complex>& eigs) {
  json t = json::array();
  for (complex z : eigs) t.push_back(complex_json(z));
  return t;
}

json saddle_json(const nls::DiscreteSaddle& s) {
  return {{"Q", complex_json(s.Q)},
          {"I", std::norm(s.Q)},
          {"theta", std::arg(s.Q)},
          {"unstable_full", s.unstable_full},
          {"unstable_even", s.unstable_even},
          {"eigenvalues", eigen_table(s.eigenvalues)},
          {"even_eigenvalues", eigen_table(s.even_eigenvalues)}};
}

void run_nls_sim(const NlsSimArgs& a, RunContext& ctx) {
  const nls::Params p{a.N, a.omega, a.alpha, a.beta, a.epsilon};
  const nls::DiscreteSaddle saddle = ctx.timed("saddle", [&] { return nls::discrete_saddle(p); });
  nls::LatticeState s0 = saddle.state;
  for (int n = 0; n < a.N; ++n)
    s0.q[n] += a.perturbation * std::cos(2 * std::numbers::pi * a.perturbation_mode * n / a.N);
  const nls::Trajectory tr = ctx.timed("integrate", [&] { return nls::simulate(s0, p, a.dt, a.steps, a.sample_every); });

  std::vector<std::string> header{"t"};
  for (int n = 0; n < a.N; ++n) header.push_back("re_q" + std::to_string(n));
  for (int n = 0; n < a.N; ++n) header.push_back("im_q" + std::to_string(n));
  header.push_back("mass");
  Csv csv(header);
  double mass_drift = 0.0;
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    std::vector<double> row{tr.t[k]};
    for (complex q : tr.states[k].q) row.push_back(q.real());
    for (complex q : tr.states[k].q) row.push_back(q.imag());
    row.push_back(tr.mass[k]);
    csv.row(row);
    mass_drift = std::max(mass_drift, std::abs(tr.mass[k] - tr.mass.front()));
  }
  ctx.out.write_text("nls_trajectory.csv", csv.str());
  ctx.out.write_json("nls_saddle.json", saddle_json(saddle));

  ctx.summary = {{"samples", tr.states.size()},
                 {"I", std::norm(saddle.Q)},
                 {"theta", std::arg(saddle.Q)},
                 {"unstable_even", saddle.unstable_even},
                 {"mass_max_drift", mass_drift}};
  if (a.encode) {
    const nls::EncodeOptions eo{a.flat_tol, a.tie_tol, a.persistence};
    const nls::Encoding e = nls::center_wing_encode(tr.states, eo);
    std::vector<nls::LatticeState> shifted;
    shifted.reserve(tr.states.size());
    for (const auto& s : tr.states) shifted.push_back(nls::half_period_translate(s));
    const nls::Encoding es = nls::center_wing_encode(shifted, eo);
    ctx.out.write_text("nls_symbols.txt", e.compressed + "\n");
    ctx.summary["symbols"] = {{"compressed_length", e.compressed.size()},
                              {"alternations", e.alternations()},
                              {"translation_swaps_symbols", es.raw == nls::swap_symbols(e.raw)}};
  }
}

struct NlsSaddleArgs {
  std::string model = "continuum";
  double omega = 0.8;
  double alpha = 1.0;
  double beta = 2.0;
  double epsilon = 0.01;
  int n_max = 10;
  int n_cut = 10;
  std::string variant = "regular";
  int N = 8;
};

void run_nls_saddle(const NlsSaddleArgs& a, RunContext& ctx) {
  Csv csv({"mode", "branch", "re", "im"});
  json report;
  if (a.model == "continuum") {
    const nls::ContinuumParams cp{a.omega, a.alpha, a.beta, a.epsilon, a.n_cut};
    const nls::SaddleInfo info = nls::continuum_saddle(cp);
    const auto variant = a.variant == "singular" ? nls::Variant::Singular : nls::Variant::Regular;
    const auto eigs = nls::continuum_spectrum(cp, info.I, a.n_max, variant);
    const nls::SilnikovReport sil = nls::silnikov_check(eigs);
    json table = json::array();
    for (const auto& e : eigs) {
      csv.row({static_cast<double>(e.mode), static_cast<double>(e.branch), e.value.real(), e.value.imag()});
      table.push_back({{"mode", e.mode}, {"branch", e.branch}, {"value", complex_json(e.value)}});
    }
    report = {{"model", "continuum"},
              {"I", info.I},
              {"theta", info.theta},
              {"eigenvalues", table},
              {"silnikov",
               {{"positive_count", sil.positive_count},
                {"two_positive", sil.two_positive},
                {"lambda2_minimal", sil.lambda2_minimal},
                {"lambda2_below_lambda0", sil.lambda2_below_lambda0},
                {"lambda0_below_lambda1", sil.lambda0_below_lambda1},
                {"all", sil.all()}}}};
  } else {
    const nls::DiscreteSaddle s = nls::discrete_saddle({a.N, a.omega, a.alpha, a.beta, a.epsilon});
    // branch column: 1 for the even subspace, 0 for the full lattice
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      csv.row({static_cast<double>(i), 0.0, s.eigenvalues[i].real(), s.eigenvalues[i].imag()});
    for (std::size_t i = 0; i < s.even_eigenvalues.size(); ++i)
      csv.row({static_cast<double>(i), 1.0, s.even_eigenvalues[i].real(), s.even_eigenvalues[i].imag()});
    report = saddle_json(s);
    report["model"] = "discrete";
  }
  ctx.out.write_json("nls_saddle.json", report);
  ctx.out.write_text("nls_eigenvalues.csv", csv.str());
  ctx.summary = report;
}

}  // namespace

Command nls_sim_command(CLI::App& root) {
  auto a = std::make_shared<NlsSimArgs>();
  Command c(root.add_subcommand("nls-sim", "Simulate the perturbed discrete NLS lattice near its saddle"));
  Options& o = *c.options;
  o.add("N", a->N, "Lattice size");
  o.add("omega", a->omega, "Frequency");
  o.add("alpha", a->alpha, "Damping");
  o.add("beta", a->beta, "Forcing");
  o.add("epsilon", a->epsilon, "Perturbation size");
  o.add("perturbation", a->perturbation, "Amplitude of the initial cosine offset from the saddle");
  o.add("perturbation-mode", a->perturbation_mode, "Wavenumber of the initial offset");
  o.add("dt", a->dt, "RK4 step (at most 0.1 h^2)");
  o.add("steps", a->steps, "Number of steps");
  o.add("sample-every", a->sample_every, "Steps between samples");
  o.flag("encode", a->encode, "Write the center/wing symbol string");
  o.add("flat-tol", a->flat_tol, "Relative |q| range below which a profile is flat");
  o.add("tie-tol", a->tie_tol, "Relative tolerance for the argmax set");
  o.add("persistence", a->persistence, "Samples a new basin must hold before it is emitted");
  c.run = [a](RunContext& ctx) { run_nls_sim(*a, ctx); };
  return c;
}

Command nls_saddle_command(CLI::App& root) {
  auto a = std::make_shared<NlsSaddleArgs>();
  Command c(root.add_subcommand("nls-saddle", "Saddle point and its eigenvalues for the continuum or lattice NLS"));
  Options& o = *c.options;
  o.add("model", a->model, "continuum or discrete")->check(CLI::IsMember({"continuum", "discrete"}));
  o.add("omega", a->omega, "Frequency");
  o.add("alpha", a->alpha, "Damping");
  o.add("beta", a->beta, "Forcing");
  o.add("epsilon", a->epsilon, "Perturbation size");
  o.add("n-max", a->n_max, "Highest continuum mode in the table");
  o.add("n-cut", a->n_cut, "Mollifier cutoff");
  o.add("variant", a->variant, "regular or singular continuum operator")
      ->check(CLI::IsMember({"regular", "singular"}));
  o.add("N", a->N, "Lattice size for the discrete model");
  c.run = [a](RunContext& ctx) { run_nls_saddle(*a, ctx); };
  return c;
}

}  // namespace chaoslab::cli
