#include "chaoslab/random_fields.hpp"

#include <cmath>

#include "chaoslab/errors.hpp"

namespace chaoslab {

CoefficientField random_coefficients(int box, std::mt19937_64& rng, double decay) {
  std::normal_distribution<double> g;
  CoefficientField w(box);
  for (int a = 0; a <= box; ++a)
    for (int b = -box; b <= box; ++b) {
      const WaveVector k{a, b};
      if (!is_upper_half(k)) continue;
      const double s = decay > 0.0 ? std::exp(-k.norm2() / decay) : 1.0;
      const double re = g(rng), im = g(rng);
      w.set(k, s * complex(re, im));
    }
  return w;
}

GridField2D random_band_limited(int n, int band, std::mt19937_64& rng) {
  if (band < 1 || 2 * band >= n) throw PreconditionError("random_band_limited: need 1 <= band < n/2");
  GridField2D f = to_grid(random_coefficients(band, rng, 0.0), n);
  const double scale = 1.0 / f.max_abs();
  f *= scale;
  return f;
}

}  // namespace chaoslab
