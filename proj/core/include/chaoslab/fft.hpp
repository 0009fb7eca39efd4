#pragma once

#include <complex>
#include <vector>

namespace chaoslab::fft {

// Unnormalized multidimensional complex DFT over row-major data.
// forward:  X_k = sum_x x_j e^{-i k.x_j}
// inverse:  x_j = sum_k X_k e^{+i k.x_j}
// Plans are cached per shape; calls are safe from several threads.
void forward(std::vector<std::complex<double>>& data, const std::vector<int>& dims);
void inverse(std::vector<std::complex<double>>& data, const std::vector<int>& dims);

// Version string of the FFT backend.
const char* backend_version();

/// Signed wavenumber of DFT bin `index` on an n-point axis. The Nyquist bin
/// maps to n/2.
constexpr int wavenumber(int index, int n) { return index <= n / 2 ? index : index - n; }

}  // namespace chaoslab::fft
