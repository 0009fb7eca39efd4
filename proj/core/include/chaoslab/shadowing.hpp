#pragma once

// Pseudo-orbits, shadowing and finite-time hyperbolicity for maps on R^d.
// Every distance here is the sup-norm.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "chaoslab/errors.hpp"
#include "chaoslab/symbolics.hpp"

namespace chaoslab::shadow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct MapSystem {
  int dimension = 0;
  std::function<Vec(const Vec&)> map;
  std::function<Mat(const Vec&)> jacobian;  // optional

  bool has_jacobian() const { return static_cast<bool>(jacobian); }
  Vec operator()(const Vec& x) const { return map(x); }
};

double sup_norm(const Vec& v);

/// Relative sup-norm mismatch between the supplied Jacobian and central
/// differences at x.
double jacobian_fd_defect(const MapSystem& f, const Vec& x, double h = 1e-6);

/// Forward iterates x, f(x), ..., f^{count-1}(x).
std::vector<Vec> iterate(const MapSystem& f, const Vec& x, int count);

struct PseudoOrbitCheck {
  std::vector<double> defects;  // |y_{j+1} - f(y_j)|
  double max_defect = 0.0;
  bool within = false;          // max_defect <= delta
};

/// Throws PreconditionError for fewer than two points.
PseudoOrbitCheck is_pseudo_orbit(const std::vector<Vec>& points, const MapSystem& f, double delta);

struct PseudoOrbit {
  std::vector<Vec> points;
  double delta = 0.0;

  /// Verifies the defect bound; throws PreconditionError when it fails.
  PseudoOrbit(std::vector<Vec> pts, const MapSystem& f, double delta);
  /// delta is set to the measured max defect.
  static PseudoOrbit measured(std::vector<Vec> pts, const MapSystem& f);

 private:
  PseudoOrbit() = default;
};

/// sup_j |f^j(x) - y_j| over the window.
double shadow_distance(const Vec& start, const std::vector<Vec>& pseudo, const MapSystem& f);

/// Concatenates A_0 = (x0, ..., x0) and A_1 = (f^{-m} y0, ..., f^m y0) blocks,
/// each of length 2m + 1, in the order of the word. Throws PreconditionError
/// for an even segment length or a symbol other than '0' and '1'.
PseudoOrbit palmer_assembly(const Vec& x0, const std::vector<Vec>& segment,
                            const std::string& word, const MapSystem& f);
inline PseudoOrbit palmer_assembly(const Vec& x0, const std::vector<Vec>& segment,
                                   const SymbolSequence& word, const MapSystem& f) {
  return palmer_assembly(x0, segment, word.window(), f);
}

/// Newton made no progress; carries the residual history.
class ShadowStagnation : public NumericalFailure {
 public:
  ShadowStagnation(const std::string& what, std::vector<double> history)
      : NumericalFailure(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

struct ShadowOptions {
  double tolerance = 1e-13;  // on the relative sup-norm of the orbit equations
  int max_iterations = 50;
  int splitting_window = 16; // Jacobian steps used to estimate E^s and E^u at the ends
};

struct ShadowResult {
  std::vector<Vec> orbit;       // x_0 .. x_{L-1}
  double epsilon = 0.0;         // sup_j |x_j - y_j|
  double orbit_defect = 0.0;    // sup_j |x_{j+1} - f(x_j)|
  std::vector<double> residual_history;
  int unstable_dimension = 0;
};

/// Solves x_{j+1} = f(x_j), j < L - 1, together with the dichotomy
/// boundary conditions: x_0 - y_0 orthogonal to E^s(y_0) and x_{L-1} -
/// y_{L-1} orthogonal to E^u(y_{L-1}), by Newton on the stacked system.
/// Requires a Jacobian. Throws ShadowStagnation.
ShadowResult find_shadow(const PseudoOrbit& pseudo, const MapSystem& f,
                         const ShadowOptions& options = {});

struct DichotomyReport {
  std::vector<double> rates;  // finite-time exponents, descending
  int unstable_dimension = 0;
  double alpha = 0.0;         // min |rate|
  double K = 1.0;             // max deviation of partial growth from rate * steps
  double angle = 0.0;         // smallest principal angle between E^u and E^s at mid-orbit
  bool hyperbolic = false;    // every |rate| > tol
  int steps = 0;
};

/// Benettin QR with the Jacobian at every orbit point. The first burn_in
/// steps are left out of the rate averages. E^s at mid-orbit comes from
/// inverse Jacobians applied backwards from the end.
DichotomyReport hyperbolicity_estimate(const std::vector<Vec>& orbit, const MapSystem& f,
                                       double tol = 1e-3, int burn_in = 0);

}  // namespace chaoslab::shadow
