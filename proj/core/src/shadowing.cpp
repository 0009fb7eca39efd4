#include "chaoslab/shadowing.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace chaoslab::shadow {

namespace {

Mat checked_jacobian(const MapSystem& f, const Vec& x) {
  if (!f.has_jacobian()) throw PreconditionError("map has no Jacobian");
  Mat J = f.jacobian(x);
  if (J.rows() != f.dimension || J.cols() != f.dimension)
    throw PreconditionError("Jacobian has the wrong shape");
  return J;
}

// Product J(points[last]) ... J(points[first]).
Mat jacobian_product(const MapSystem& f, const std::vector<Vec>& points, int first, int last) {
  Mat P = Mat::Identity(f.dimension, f.dimension);
  for (int j = first; j <= last; ++j) P = checked_jacobian(f, points[static_cast<std::size_t>(j)]) * P;
  return P;
}

}  // namespace

double sup_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

double jacobian_fd_defect(const MapSystem& f, const Vec& x, double h) {
  const Mat J = checked_jacobian(f, x);
  Mat fd(f.dimension, f.dimension);
  for (int i = 0; i < f.dimension; ++i) {
    Vec e = Vec::Zero(f.dimension);
    e(i) = h;
    fd.col(i) = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  const double scale = std::max(1.0, J.lpNorm<Eigen::Infinity>());
  return (J - fd).lpNorm<Eigen::Infinity>() / scale;
}

std::vector<Vec> iterate(const MapSystem& f, const Vec& x, int count) {
  std::vector<Vec> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(x);
  for (int j = 1; j < count; ++j) out.push_back(f(out.back()));
  return out;
}

PseudoOrbitCheck is_pseudo_orbit(const std::vector<Vec>& points, const MapSystem& f, double delta) {
  if (points.size() < 2) throw PreconditionError("is_pseudo_orbit: need at least two points");
  PseudoOrbitCheck c;
  c.defects.reserve(points.size() - 1);
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    const double d = sup_norm(points[j + 1] - f(points[j]));
    c.defects.push_back(d);
    c.max_defect = std::max(c.max_defect, d);
  }
  c.within = c.max_defect <= delta;
  return c;
}

PseudoOrbit::PseudoOrbit(std::vector<Vec> pts, const MapSystem& f, double d)
    : points(std::move(pts)), delta(d) {
  const auto c = is_pseudo_orbit(points, f, delta);
  if (!c.within) {
    std::ostringstream os;
    os << "PseudoOrbit: max defect " << c.max_defect << " exceeds delta " << delta;
    throw PreconditionError(os.str());
  }
}

PseudoOrbit PseudoOrbit::measured(std::vector<Vec> pts, const MapSystem& f) {
  PseudoOrbit p;
  p.delta = is_pseudo_orbit(pts, f, 0.0).max_defect;
  p.points = std::move(pts);
  return p;
}

double shadow_distance(const Vec& start, const std::vector<Vec>& pseudo, const MapSystem& f) {
  double d = 0.0;
  Vec x = start;
  for (std::size_t j = 0; j < pseudo.size(); ++j) {
    if (j > 0) x = f(x);
    d = std::max(d, sup_norm(x - pseudo[j]));
  }
  return d;
}

PseudoOrbit palmer_assembly(const Vec& x0, const std::vector<Vec>& segment,
                            const std::string& word, const MapSystem& f) {
  if (segment.size() % 2 == 0)
    throw PreconditionError("palmer_assembly: segment length must be odd (2m+1)");
  if (word.empty()) throw PreconditionError("palmer_assembly: empty word");
  std::vector<Vec> pts;
  pts.reserve(segment.size() * word.size());
  for (char a : word) {
    if (a == '0') {
      for (std::size_t i = 0; i < segment.size(); ++i) pts.push_back(x0);
    } else if (a == '1') {
      pts.insert(pts.end(), segment.begin(), segment.end());
    } else {
      throw PreconditionError(std::string("palmer_assembly: symbol '") + a + "' is not 0 or 1");
    }
  }
  if (pts.size() < 2) throw PreconditionError("palmer_assembly: assembled orbit has one point");
  return PseudoOrbit::measured(std::move(pts), f);
}

ShadowResult find_shadow(const PseudoOrbit& pseudo, const MapSystem& f,
                         const ShadowOptions& options) {
  const auto& y = pseudo.points;
  const int L = static_cast<int>(y.size());
  const int d = f.dimension;
  if (L < 2) throw PreconditionError("find_shadow: need at least two points");
  if (!f.has_jacobian()) throw PreconditionError("find_shadow: map has no Jacobian");

  // Splitting at both ends from short Jacobian products along the pseudo-orbit.
  const int n = std::max(1, std::min(options.splitting_window, L - 1));
  Eigen::JacobiSVD<Mat> head(jacobian_product(f, y, 0, n - 1), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Mat> tail(jacobian_product(f, y, L - 1 - n, L - 2), Eigen::ComputeFullU | Eigen::ComputeFullV);
  int du = 0;
  for (int i = 0; i < d; ++i)
    if (std::log(head.singularValues()(i)) / n > 0.0) ++du;
  const int ds = d - du;
  const Mat Es0 = head.matrixV().rightCols(ds);   // stable directions at y_0
  const Mat EuL = tail.matrixU().leftCols(du);    // unstable directions at y_{L-1}

  const int N = L * d;
  std::vector<Vec> x = y;
  double scale = 1.0;
  for (const Vec& v : y) scale = std::max(scale, sup_norm(v));

  ShadowResult res;
  res.unstable_dimension = du;
  auto residual = [&](Vec& G) {
    G.resize(N);
    for (int j = 0; j + 1 < L; ++j) G.segment(j * d, d) = x[j + 1] - f(x[j]);
    G.segment((L - 1) * d, ds) = Es0.transpose() * (x[0] - y[0]);
    G.segment((L - 1) * d + ds, du) = EuL.transpose() * (x[L - 1] - y[L - 1]);
  };

  Vec G;
  residual(G);
  double r = sup_norm(G) / scale;
  res.residual_history.push_back(r);
  double best = r;
  int since_best = 0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  for (int it = 0; it < options.max_iterations && !(r < options.tolerance); ++it) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(L) * d * (d + 1));
    for (int j = 0; j + 1 < L; ++j) {
      const Mat J = checked_jacobian(f, x[j]);
      for (int a = 0; a < d; ++a) {
        trip.emplace_back(j * d + a, (j + 1) * d + a, 1.0);
        for (int b = 0; b < d; ++b)
          if (J(a, b) != 0.0) trip.emplace_back(j * d + a, j * d + b, -J(a, b));
      }
    }
    for (int a = 0; a < ds; ++a)
      for (int b = 0; b < d; ++b) trip.emplace_back((L - 1) * d + a, b, Es0(b, a));
    for (int a = 0; a < du; ++a)
      for (int b = 0; b < d; ++b) trip.emplace_back((L - 1) * d + ds + a, (L - 1) * d + b, EuL(b, a));
    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    lu.compute(A);
    if (lu.info() != Eigen::Success)
      throw ShadowStagnation("find_shadow: singular linearized orbit operator", res.residual_history);
    const Vec step = lu.solve(G);
    for (int j = 0; j < L; ++j) x[j] -= step.segment(j * d, d);
    residual(G);
    r = sup_norm(G) / scale;
    res.residual_history.push_back(r);
    if (!std::isfinite(r)) break;
    if (r < best * 0.5) {
      best = r;
      since_best = 0;
    } else if (++since_best >= 5) {
      break;
    }
  }
  if (!(r < options.tolerance)) {
    std::ostringstream os;
    os << "find_shadow: Newton stagnated at relative residual " << r << " after "
       << res.residual_history.size() - 1 << " iterations";
    throw ShadowStagnation(os.str(), res.residual_history);
  }
  for (int j = 0; j < L; ++j) res.epsilon = std::max(res.epsilon, sup_norm(x[j] - y[j]));
  for (int j = 0; j + 1 < L; ++j) res.orbit_defect = std::max(res.orbit_defect, sup_norm(x[j + 1] - f(x[j])));
  res.orbit = std::move(x);
  return res;
}

DichotomyReport hyperbolicity_estimate(const std::vector<Vec>& orbit, const MapSystem& f,
                                       double tol, int burn_in) {
  const int L = static_cast<int>(orbit.size());
  const int d = f.dimension;
  if (L < 1) throw PreconditionError("hyperbolicity_estimate: empty orbit");
  if (burn_in < 0 || burn_in >= L) throw PreconditionError("hyperbolicity_estimate: bad burn_in");

  DichotomyReport rep;
  rep.steps = L - burn_in;
  const int mid = L / 2;
  Mat Q = Mat::Identity(d, d);
  Mat Eu_mid;
  std::vector<double> sums(static_cast<std::size_t>(d), 0.0);
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(d));
  for (int j = 0; j < L; ++j) {
    if (j == mid) Eu_mid = Q;
    Eigen::HouseholderQR<Mat> qr(checked_jacobian(f, orbit[j]) * Q);
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    Q = qr.householderQ() * Mat::Identity(d, d);
    // fix signs so that diag(R) > 0
    for (int i = 0; i < d; ++i)
      if (R(i, i) < 0.0) {
        R.row(i) *= -1.0;
        Q.col(i) *= -1.0;
      }
    if (j < burn_in) continue;
    for (int i = 0; i < d; ++i) {
      sums[i] += std::log(R(i, i));
      partial[i].push_back(sums[i]);
    }
  }
  std::vector<double> rates(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) rates[i] = sums[i] / rep.steps;

  double dev = 0.0;
  for (int i = 0; i < d; ++i)
    for (std::size_t t = 0; t < partial[i].size(); ++t)
      dev = std::max(dev, std::abs(partial[i][t] - rates[i] * static_cast<double>(t + 1)));
  rep.K = std::exp(dev);

  rep.rates = rates;
  std::sort(rep.rates.begin(), rep.rates.end(), std::greater<>());
  rep.unstable_dimension = static_cast<int>(std::count_if(rates.begin(), rates.end(), [](double r) { return r > 0.0; }));
  rep.alpha = std::abs(rep.rates.front());
  for (double r : rep.rates) rep.alpha = std::min(rep.alpha, std::abs(r));
  rep.hyperbolic = rep.alpha > tol;

  // E^s at mid-orbit: most expanded directions of the inverse Jacobians
  // applied from the end of the orbit back to `mid`.
  const int du = rep.unstable_dimension, ds = d - du;
  if (du > 0 && ds > 0) {
    Mat Qb = Mat::Identity(d, d);
    for (int j = L - 1; j >= mid; --j) {
      Eigen::HouseholderQR<Mat> qr(checked_jacobian(f, orbit[j]).fullPivLu().solve(Qb));
      Qb = qr.householderQ() * Mat::Identity(d, d);
    }
    // columns of Q from the forward pass are ordered by the diagonal of R,
    // which after convergence follows the exponents
    std::vector<int> order(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rates[a] > rates[b]; });
    Mat U(d, du);
    for (int i = 0; i < du; ++i) U.col(i) = Eu_mid.col(order[i]);
    Eigen::HouseholderQR<Mat> uq(U);
    const Mat Uo = uq.householderQ() * Mat::Identity(d, du);
    const Mat S = Qb.leftCols(ds);
    Eigen::JacobiSVD<Mat> svd(Uo.transpose() * S);
    const double c = std::min(1.0, svd.singularValues()(0));
    rep.angle = std::acos(c);
  } else {
    rep.angle = 0.0;
  }
  return rep;
}

}  // namespace chaoslab::shadow
