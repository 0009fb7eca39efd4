#include <algorithm>

#include "app.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/spectra.hpp"

namespace chaoslab::cli {
namespace {

struct SpectrumArgs {
  std::vector<int> khat{-3, -2};
  std::vector<int> p{1, 1};
  std::vector<double> gamma{2.0, 0.0};
  int trunc = 50;
  bool refine = false;
  int depth = 0;
  double tol = 0.0;
};

// Largest real part; among near ties the upper half-plane wins.
complex refinement_seed(const std::vector<complex>& eigs) {
  complex best = eigs.front();
  for (complex z : eigs) {
    const double tie = 1e-12 * std::max(1.0, std::abs(best.real()));
    if (z.real() > best.real() + tie || (std::abs(z.real() - best.real()) <= tie && z.imag() > best.imag()))
      best = z;
  }
  return best;
}

void run_spectrum(const SpectrumArgs& a, RunContext& ctx) {
  const complex gamma{a.gamma[0], a.gamma[1]};
  const ClassIndex cls{{a.khat[0], a.khat[1]}, {a.p[0], a.p[1]}};
  const ClassOperator op = build_class_operator(cls, gamma, a.trunc);
  SpectrumReport rep = ctx.timed("eigensolve", [&] { return truncated_spectrum(op); });
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](complex x, complex y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  });
  const double tol = a.tol > 0.0 ? a.tol : default_nonimaginary_tolerance(gamma);

  json s = {{"khat", a.khat},
            {"p", a.p},
            {"gamma", complex_json(gamma)},
            {"trunc", a.trunc},
            {"dimension", op.dimension()},
            {"degenerate", op.degenerate},
            {"case", to_string(rep.spectrum_case)},
            {"meets_closed_disk", meets_closed_disk(cls)},
            {"b", complex_json(rep.b)},
            {"zeta_bound", rep.zeta_bound},
            {"nonimaginary_tolerance", tol},
            {"count_nonimaginary", count_nonimaginary(rep, tol)},
            {"quadruple_defect", quadruple_symmetry_defect(rep)}};

  if (a.refine) {
    if (rep.eigenvalues.empty()) throw PreconditionError("spectrum --refine: empty spectrum");
    const complex seed = refinement_seed(rep.eigenvalues);
    ContinuedFractionOptions opt;
    opt.depth = a.depth;
    complex lambda;
    try {
      lambda = ctx.timed("refine", [&] { return continued_fraction_eigen(op, seed, opt); });
    } catch (const NewtonDivergence& e) {
      throw NumericalFailure(std::string(e.what()) + " (last iterate " + format_double(e.last_iterate.real()) +
                             (e.last_iterate.imag() < 0 ? "" : "+") + format_double(e.last_iterate.imag()) + "i)");
    }
    json r = {{"seed", complex_json(seed)}, {"lambda", complex_json(lambda)}};
    if (std::abs(gamma) > 0.0) r["lambda_normalized"] = complex_json(2.0 * lambda / std::abs(gamma));
    s["refined"] = r;
  }

  Csv csv({"re", "im"});
  json eig = json::array();
  for (complex z : rep.eigenvalues) {
    csv.row({z.real(), z.imag()});
    eig.push_back(complex_json(z));
  }
  json full = s;
  full["eigenvalues"] = eig;
  ctx.out.write_json("spectrum.json", full);
  ctx.out.write_text("spectrum.csv", csv.str());
  ctx.summary = s;
}

}  // namespace

Command spectrum_command(CLI::App& root) {
  auto a = std::make_shared<SpectrumArgs>();
  Command c(root.add_subcommand("spectrum", "Truncated spectrum of the linearization about a single-mode flow"));
  Options& o = *c.options;
  o.list("khat", a->khat, 2, "Class base wavevector k1,k2");
  o.list("p", a->p, 2, "Steady mode p1,p2");
  o.list("gamma", a->gamma, 2, "Steady amplitude re,im");
  o.add("trunc", a->trunc, "Retain class members n in [-trunc, trunc]");
  o.flag("refine", a->refine, "Polish the leading eigenvalue with the continued fraction");
  o.add("depth", a->depth, "Continued fraction depth (0: 4 * trunc)");
  o.add("tol", a->tol, "Real-part threshold for counting (0: 0.025 |gamma|)");
  c.run = [a](RunContext& ctx) { run_spectrum(*a, ctx); };
  return c;
}

}  // namespace chaoslab::cli
