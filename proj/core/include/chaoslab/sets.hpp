#pragma once

#include <complex>
#include <vector>

namespace chaoslab {

/// Distance from z to the closest point of `set`; +inf for an empty set.
double distance_to_set(std::complex<double> z, const std::vector<std::complex<double>>& set);

/// Symmetric Hausdorff distance between finite point sets in the complex
/// plane. Two empty sets are at distance 0; one empty set gives +inf.
double hausdorff_distance(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b);

}  // namespace chaoslab
