#pragma once

#include <cstddef>

#include "gmrfinfo/spectra.hpp"

namespace gmrfinfo {

/// Per-node information rates in nats, with a self-convergence error handle.
struct InfoRateResult {
  double kli = 0.0;
  double mi = 0.0;
  std::size_t grid = 0;
  /// Largest of |rate(grid) - rate(2 grid)| over both rates.
  double quad_error_estimate = 0.0;
};

struct LowSnrConstants {
  double c3;        ///< KLI ~ c3 snr^2
  double c3_prime;  ///< MI ~ c3_prime snr
};

inline constexpr std::size_t kDefaultRateGrid = 512;

// Thread arguments of 0 mean default_threads(). Results never depend on it.

/// KLI rate of N(0, sigma2 I) against the stationary field with spectrum
/// f1, by trapezoid quadrature on a grid^d lattice. d <= 3.
double kli_rate_general(const SpectralDensity& f1, double sigma2, std::size_t grid,
                        unsigned threads = 0);

/// MI rate between a field with spectrum f and its observation in white
/// noise of variance sigma2.
double mi_rate_general(const SpectralDensity& f, double sigma2, std::size_t grid,
                       unsigned threads = 0);

/// Hidden SFCAR rates as functions of the measurement SNR. The integrand
/// only depends on sin^2 of the half-frequencies, so a quarter of the grid
/// is summed with doubled weights. Exactly 0 when perfectly correlated.
double kli_rate_sfcar(double snr, EdgeDependence edge, std::size_t grid = kDefaultRateGrid,
                      unsigned threads = 0);
double mi_rate_sfcar(double snr, EdgeDependence edge, std::size_t grid = kDefaultRateGrid,
                     unsigned threads = 0);

inline double kli_rate_sfcar(double snr, double zeta, std::size_t grid = kDefaultRateGrid,
                             unsigned threads = 0) {
  return kli_rate_sfcar(snr, EdgeDependence::from_zeta(zeta), grid, threads);
}
inline double mi_rate_sfcar(double snr, double zeta, std::size_t grid = kDefaultRateGrid,
                            unsigned threads = 0) {
  return mi_rate_sfcar(snr, EdgeDependence::from_zeta(zeta), grid, threads);
}

/// Both rates at grid and 2 grid; values are those at grid.
InfoRateResult sfcar_rates(double snr, EdgeDependence edge, std::size_t grid = kDefaultRateGrid,
                           unsigned threads = 0);

/// KL divergence D(N(0,1) || N(0,1+snr)): the rate of an i.i.d. field.
double stein_kli(double snr);

/// Low-SNR slopes. c3' is normalised so that MI / snr -> c3' exactly; see
/// the README for the factor of two this implies. Rejects zeta > 0.2499.
LowSnrConstants low_snr_constants(double zeta, std::size_t grid = kDefaultRateGrid);

struct OptimalZeta {
  double zeta_star;
  double kli_star;
};

/// Edge dependence maximising the KLI rate at the given SNR: a coarse scan
/// over [0, 1/4] followed by golden-section refinement around the best
/// coarse point. Ties go to the smaller zeta.
OptimalZeta optimal_zeta(double snr, int coarse = 101, double refine_tol = 1e-6,
                         std::size_t grid = kDefaultRateGrid, unsigned threads = 0);

}  // namespace gmrfinfo
