#include "chaoslab/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chaoslab/errors.hpp"

namespace chaoslab::darboux {

namespace {

struct Jet {
  GridField2D v, x, y, xx, xy, yy;
};

Jet jet(const GridField2D& g) {
  return {g, derivative(g, 1, 0), derivative(g, 0, 1), derivative(g, 2, 0), derivative(g, 1, 1),
          derivative(g, 0, 2)};
}

void require_same(const GridField2D& a, const GridField2D& b, const char* what) {
  if (a.resolution() != b.resolution())
    throw PreconditionError(std::string("darboux: resolution mismatch in ") + what);
}

// Gauge quotient N / D with N = p_s - f_s p / f, D = Omega_s, together with
// its x and y derivatives by the quotient rule. s selects the form.
struct Quotient {
  double value, dx, dy;
};

Quotient gauge_quotient(const Jet& p, const Jet& f, const Jet& om, std::size_t i, bool xform) {
  const double pv = p.v.values()[i], fv = f.v.values()[i];
  const double g = pv / fv;
  const double gx = (p.x.values()[i] * fv - pv * f.x.values()[i]) / (fv * fv);
  const double gy = (p.y.values()[i] * fv - pv * f.y.values()[i]) / (fv * fv);
  double ps, fs, D, ps_x, ps_y, fs_x, fs_y, D_x, D_y;
  if (xform) {
    ps = p.x.values()[i], fs = f.x.values()[i], D = om.x.values()[i];
    ps_x = p.xx.values()[i], ps_y = p.xy.values()[i];
    fs_x = f.xx.values()[i], fs_y = f.xy.values()[i];
    D_x = om.xx.values()[i], D_y = om.xy.values()[i];
  } else {
    ps = p.y.values()[i], fs = f.y.values()[i], D = om.y.values()[i];
    ps_x = p.xy.values()[i], ps_y = p.yy.values()[i];
    fs_x = f.xy.values()[i], fs_y = f.yy.values()[i];
    D_x = om.xy.values()[i], D_y = om.yy.values()[i];
  }
  const double N = ps - fs * g;
  const double N_x = ps_x - fs_x * g - fs * gx;
  const double N_y = ps_y - fs_y * g - fs * gy;
  return {N / D, (N_x * D - N * D_x) / (D * D), (N_y * D - N * D_y) / (D * D)};
}

struct Masks {
  std::vector<char> x, y;
};

Masks build_masks(const Jet& f, const Jet& om, double rel_tol) {
  const double fmax = f.v.max_abs(), oxmax = om.x.max_abs(), oymax = om.y.max_abs();
  const std::size_t size = f.v.values().size();
  Masks m{std::vector<char>(size, 0), std::vector<char>(size, 0)};
  for (std::size_t i = 0; i < size; ++i) {
    const bool f_ok = std::abs(f.v.values()[i]) >= rel_tol * fmax && fmax > 0.0;
    m.x[i] = f_ok && oxmax > 0.0 && std::abs(om.x.values()[i]) >= rel_tol * oxmax;
    m.y[i] = f_ok && oymax > 0.0 && std::abs(om.y.values()[i]) >= rel_tol * oymax;
  }
  return m;
}

GaugeResult gauge_from_jets(const Jet& p, const Jet& f, const Jet& om, const GaugeOptions& opt) {
  const int n = p.v.resolution();
  Masks m = build_masks(f, om, opt.rel_tol);
  GaugeResult r{GridField2D(n), GridField2D(n), std::move(m.x), std::move(m.y)};
  std::size_t masked = 0;
  for (std::size_t i = 0; i < r.mask.size(); ++i) {
    if (r.mask[i]) r.p_tilde.values()[i] = gauge_quotient(p, f, om, i, true).value;
    else ++masked;
    if (r.mask_y[i]) r.p_tilde_y.values()[i] = gauge_quotient(p, f, om, i, false).value;
    if (r.mask[i] && r.mask_y[i])
      r.form_defect = std::max(r.form_defect, std::abs(r.p_tilde.values()[i] - r.p_tilde_y.values()[i]));
  }
  r.masked_fraction = static_cast<double>(masked) / static_cast<double>(r.mask.size());
  if (r.masked_fraction > opt.max_masked_fraction) {
    std::ostringstream os;
    os << "darboux_gauge: " << r.masked_fraction * 100.0 << "% of the grid is masked";
    throw DomainError(os.str());
  }
  return r;
}

}  // namespace

GaugeResult darboux_gauge(const GridField2D& p, const GridField2D& f, const GridField2D& omega,
                          const GaugeOptions& opt) {
  require_same(p, f, "darboux_gauge");
  require_same(p, omega, "darboux_gauge");
  return gauge_from_jets(jet(p), jet(f), jet(omega), opt);
}

PotentialTransform darboux_potentials(const GridField2D& omega, const GridField2D& psi,
                                      const GridField2D& F) {
  require_same(omega, psi, "darboux_potentials");
  require_same(omega, F, "darboux_potentials");
  const GridField2D lapF = laplacian(F);
  PotentialTransform t{omega + lapF, psi + F};
  t.constraint_omega = grid_bracket(omega, lapF).max_abs();
  t.constraint_self = grid_bracket(lapF, F).max_abs();
  t.valid = t.constraint_omega < 1e-9 && t.constraint_self < 1e-9;
  return t;
}

lax::LaxReport verify_darboux(const GridField2D& omega, const GridField2D& psi, const GridField2D& F,
                              const GridField2D& p, const GridField2D& f, const GaugeOptions& opt) {
  require_same(omega, p, "verify_darboux");
  require_same(omega, f, "verify_darboux");
  constexpr double tol = 1e-9;

  lax::LaxReport r;
  const PotentialTransform pt = darboux_potentials(omega, psi, F);
  r.residuals["constraint_omega"] = pt.constraint_omega;
  r.residuals["constraint_self"] = pt.constraint_self;
  r.residuals["pre_omega_p"] = grid_bracket(omega, p).max_abs();
  r.residuals["pre_omega_f"] = grid_bracket(omega, f).max_abs();
  r.residuals["pre_psi_p"] = grid_bracket(psi, p).max_abs();
  r.residuals["pre_psi_f"] = grid_bracket(psi, f).max_abs();

  std::vector<std::string> failed;
  for (const char* key : {"pre_omega_p", "pre_omega_f", "pre_psi_p", "pre_psi_f", "constraint_omega",
                          "constraint_self"})
    if (!(r.residuals[key] < tol)) failed.push_back(key);
  if (!failed.empty()) {
    std::ostringstream os;
    os << "verify_darboux: preconditions violated:";
    for (const auto& k : failed) os << ' ' << k << '=' << r.residuals[k];
    throw PreconditionError(os.str());
  }

  const Jet jp = jet(p), jf = jet(f), jo = jet(omega);
  const GaugeResult g = gauge_from_jets(jp, jf, jo, opt);
  const GridField2D otx = partial_x(pt.omega_tilde), oty = partial_y(pt.omega_tilde);
  const GridField2D ptx = partial_x(pt.psi_tilde), pty = partial_y(pt.psi_tilde);

  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < g.mask.size(); ++i) {
    if (!g.mask[i]) continue;
    const Quotient q = gauge_quotient(jp, jf, jo, i, true);
    d1 = std::max(d1, std::abs(otx.values()[i] * q.dy - oty.values()[i] * q.dx));
    d2 = std::max(d2, std::abs(ptx.values()[i] * q.dy - pty.values()[i] * q.dx));
  }
  r.residuals["d1"] = d1;
  r.residuals["d2"] = d2;
  r.residuals["form_defect"] = g.form_defect;
  r.residuals["masked_fraction"] = g.masked_fraction;
  r.residuals["p_tilde_max"] = g.p_tilde.max_abs();
  r.flags["constraints_valid"] = pt.valid;
  r.flags["d1_below_1e-8"] = d1 < 1e-8;
  return r;
}

GridField2D TrigSeries::sample(int n) const {
  return GridField2D::sample(n, [this](double x, double y) {
    double s = constant;
    for (const auto& t : terms) {
      const double phase = t.k.k1 * x + t.k.k2 * y;
      s += t.a * std::cos(phase) + t.b * std::sin(phase);
    }
    return s;
  });
}

TrigSeries trig_series_from_json(const nlohmann::json& j) {
  try {
    TrigSeries s;
    s.constant = j.value("constant", 0.0);
    if (j.contains("terms"))
      for (const auto& t : j.at("terms")) {
        const auto& k = t.at("k");
        if (!k.is_array() || k.size() != 2) throw PreconditionError("trig series: k must be [k1, k2]");
        s.terms.push_back({{k[0].get<int>(), k[1].get<int>()}, t.value("cos", 0.0), t.value("sin", 0.0)});
      }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("trig series: ") + e.what());
  }
}

Construction shear_power(int n, double c) {
  Construction k;
  k.omega = GridField2D::sample(n, [](double x, double y) { return 2.0 + std::cos(x + y); });
  k.psi = GridField2D::sample(n, [](double x, double y) { return -0.5 * std::cos(x + y); });
  k.F = GridField2D::sample(n, [c](double x, double y) { return c * std::cos(x + y); });
  k.p = pointwise_product(k.omega, k.omega);
  k.f = k.omega;
  return k;
}

Construction construction_from_json(const nlohmann::json& j, int n) {
  for (const char* key : {"omega", "F", "p", "f"})
    if (!j.contains(key)) throw PreconditionError(std::string("construction: missing \"") + key + "\"");
  Construction k;
  k.omega = trig_series_from_json(j.at("omega")).sample(n);
  k.F = trig_series_from_json(j.at("F")).sample(n);
  k.p = trig_series_from_json(j.at("p")).sample(n);
  k.f = trig_series_from_json(j.at("f")).sample(n);
  if (j.contains("psi")) {
    k.psi = trig_series_from_json(j.at("psi")).sample(n);
  } else {
    k.psi = invert_laplacian(k.omega - GridField2D::constant(n, k.omega.mean()));
  }
  return k;
}

Construction load_construction(std::istream& in, int n) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("construction: ") + e.what());
  }
  return construction_from_json(j, n);
}

}  // namespace chaoslab::darboux
