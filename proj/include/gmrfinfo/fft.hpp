#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gmrfinfo::fft {

enum class Direction {
  forward,   ///< X[k] = sum_x x[x] exp(-2 pi i k.x / n)
  backward,  ///< X[k] = sum_x x[x] exp(+2 pi i k.x / n)
};

/// Unnormalised multidimensional DFT of a row-major array with the given
/// extents, in place. Backed by FFTW with estimate-only planning, so
/// results are reproducible run to run. Safe to call from several threads.
void transform(std::span<std::complex<double>> data, std::span<const int> extents,
               Direction dir);

}  // namespace gmrfinfo::fft
