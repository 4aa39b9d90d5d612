#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the rate quadratures and the Monte
// Carlo likelihood evaluation. Every kernel has a portable scalar reference
// and, where the CPU supports it, an AVX2+FMA variant selected at runtime.
// Variants agree to rounding (tests/test_kernels.cpp); they are not
// bit-identical, so one process always uses a single table.

namespace gmrfinfo::kernels {

enum class RateKind {
  kli,  ///< 1/2 log(1+x) - 1/2 x/(1+x): Gaussian KL divergence per bin
  mi,   ///< 1/2 log(1+x): Gaussian mutual information per bin
};

/// Below this |y|, y = x/(1+x), the KLI term is summed as its series
/// 1/2 sum_{k>=2} y^k / k; the closed form cancels there.
inline constexpr double kKliSeriesBound = 0.125;
inline constexpr int kKliSeriesTerms = 20;

inline double rate_term(RateKind kind, double x) {
  if (kind == RateKind::mi) return 0.5 * std::log1p(x);
  const double y = x / (1.0 + x);
  if (std::abs(y) < kKliSeriesBound) {
    double p = 1.0 / kKliSeriesTerms;
    for (int k = kKliSeriesTerms - 1; k >= 2; --k) p = p * y + 1.0 / k;
    return 0.5 * y * y * p;
  }
  return 0.5 * std::log1p(x) - 0.5 * y;
}

struct KernelTable {
  std::string_view name;

  /// sum_j phi(x_j) for x_j > -1.
  double (*rate_sum)(RateKind kind, std::span<const double> x);

  /// sum_j w_j phi(x_j) with x_j = scale / (base + slope * s_j). Used for
  /// one row of the SFCAR spectral integrand; all denominators must be > 0.
  double (*sfcar_row_sum)(RateKind kind, std::span<const double> s, std::span<const double> w,
                          double base, double slope, double scale);

  /// sum_j log(a_j) for a_j > 0.
  double (*log_sum)(std::span<const double> a);

  /// sum_j |z_j|^2 c_j.
  double (*weighted_norm_sum)(std::span<const std::complex<double>> z, std::span<const double> c);
};

const KernelTable& scalar_table();

/// AVX2+FMA table, or nullptr when not built for x86-64 or the CPU lacks it.
const KernelTable* avx2_table();

/// Table used by the library. Picks the widest supported variant once per
/// process; the environment variable GMRFINFO_KERNELS=scalar|avx2 overrides.
const KernelTable& active();

}  // namespace gmrfinfo::kernels
