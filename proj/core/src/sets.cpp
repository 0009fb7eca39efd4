#include "chaoslab/sets.hpp"

#include <algorithm>
#include <limits>

namespace chaoslab {

double distance_to_set(std::complex<double> z, const std::vector<std::complex<double>>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : set) best = std::min(best, std::abs(z - w));
  return best;
}

double hausdorff_distance(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b) {
  if (a.empty() && b.empty()) return 0.0;
  double h = 0.0;
  for (const auto& z : a) h = std::max(h, distance_to_set(z, b));
  for (const auto& z : b) h = std::max(h, distance_to_set(z, a));
  return h;
}

}  // namespace chaoslab
