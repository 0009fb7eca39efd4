#pragma once

#include <random>

#include "chaoslab/fourier.hpp"
#include "chaoslab/grid.hpp"

namespace chaoslab {

// Gaussian coefficients on the box with amplitude exp(-|k|^2 / decay);
// decay <= 0 gives unit amplitude on every mode.
CoefficientField random_coefficients(int box, std::mt19937_64& rng, double decay);

// Gaussian modes with |k1|, |k2| <= band on an n x n grid, scaled to unit
// sup-norm.
GridField2D random_band_limited(int n, int band, std::mt19937_64& rng);

}  // namespace chaoslab
