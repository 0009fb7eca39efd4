#pragma once

// Gauge transform and potential shift for the zero-eigenvalue Lax system
// {Omega, p} = 0, p_t + {Psi, p} = 0, evaluated on a periodic grid with an
// explicit validity mask where the gauge divides by zero.

#include <istream>
#include <string>
#include <vector>

#include "chaoslab/grid.hpp"
#include "chaoslab/lax.hpp"

namespace chaoslab::darboux {

struct GaugeOptions {
  /// A point is masked when |Omega_x| < rel_tol * max|Omega_x| or
  /// |f| < rel_tol * max|f|.
  double rel_tol = 1e-2;
  /// Error when more than this fraction of the grid is masked.
  double max_masked_fraction = 0.5;
};

struct GaugeResult {
  GridField2D p_tilde;        // x-form; 0 on masked points
  GridField2D p_tilde_y;      // y-form; 0 where its own mask applies
  std::vector<char> mask;     // 1 = x-form valid
  std::vector<char> mask_y;   // 1 = y-form valid
  double masked_fraction = 0.0;
  double form_defect = 0.0;   // sup |x-form - y-form| where both are valid

  bool valid(int i, int j) const { return mask[static_cast<std::size_t>(i) * p_tilde.resolution() + j] != 0; }
};

/// p~ = (p_x - (f_x / f) p) / Omega_x and the y-form with Omega_y. Throws
/// DomainError when the x-form mask exceeds max_masked_fraction.
GaugeResult darboux_gauge(const GridField2D& p, const GridField2D& f, const GridField2D& omega,
                          const GaugeOptions& opt = {});

struct PotentialTransform {
  GridField2D omega_tilde;
  GridField2D psi_tilde;
  double constraint_omega = 0.0;  // sup |{Omega, Laplacian F}|
  double constraint_self = 0.0;   // sup |{Laplacian F, F}|
  bool valid = false;             // both constraints below 1e-9
};

PotentialTransform darboux_potentials(const GridField2D& omega, const GridField2D& psi,
                                      const GridField2D& F);

/// Residuals "constraint_omega", "constraint_self", "pre_omega_p",
/// "pre_omega_f", "pre_psi_p", "pre_psi_f", "d1" = sup off-mask of
/// {Omega~, p~}, "d2" = sup off-mask of {Psi~, p~} (steady case, p~_t = 0),
/// "form_defect" and "masked_fraction". Throws PreconditionError naming
/// every failed precondition (tolerance 1e-9).
lax::LaxReport verify_darboux(const GridField2D& omega, const GridField2D& psi, const GridField2D& F,
                              const GridField2D& p, const GridField2D& f,
                              const GaugeOptions& opt = {});

/// Finite trigonometric series c0 + sum a cos(k.x) + b sin(k.x).
struct TrigSeries {
  struct Term {
    WaveVector k;
    double a = 0.0;
    double b = 0.0;
  };
  double constant = 0.0;
  std::vector<Term> terms;

  GridField2D sample(int n) const;
};

/// {"constant": c, "terms": [{"k": [k1, k2], "cos": a, "sin": b}, ...]}
TrigSeries trig_series_from_json(const nlohmann::json& j);

struct Construction {
  GridField2D omega, psi, F, p, f;
};

/// Omega = 2 + cos(x+y), Psi = -cos(x+y)/2, p = Omega^2, f = Omega,
/// F = c cos(x+y).
Construction shear_power(int n, double c);

/// JSON object with TrigSeries entries "omega", "F", "p", "f". Psi is the
/// zero-mean inverse Laplacian of Omega unless a "psi" entry is given.
Construction construction_from_json(const nlohmann::json& j, int n);
Construction load_construction(std::istream& in, int n);

}  // namespace chaoslab::darboux
