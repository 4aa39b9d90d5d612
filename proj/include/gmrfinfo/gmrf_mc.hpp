#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gmrfinfo/spectra.hpp"

namespace gmrfinfo {

/// How the eigenvalues of a circulant (torus) covariance were obtained.
enum class CirculantMode {
  /// lambda_i = (2pi)^d f(2 pi i / n): the stationary model on the torus
  /// whose per-node KLI is exactly the grid-n quadrature of the rate.
  spectrum_samples,
  /// DFT of the plane autocovariance wrapped onto the torus
  /// (c_h = gamma_h' with h' = h for |h| <= n/2, else h - n): the circulant
  /// approximation of the block-Toeplitz covariance.
  wrapped_covariance,
};

struct CirculantSpectrum {
  std::size_t n = 0;
  int dim = 0;
  std::vector<double> eigs;  ///< row-major over DFT frequency indices
  CirculantMode mode = CirculantMode::spectrum_samples;

  std::size_t size() const { return eigs.size(); }
};

/// Throws ModelError if an eigenvalue is not positive and finite.
CirculantSpectrum circulant_eigs(const SpectralDensity& spec, std::size_t n,
                                 CirculantMode mode = CirculantMode::spectrum_samples,
                                 std::size_t cov_grid = 1024);

/// Eigenvalues of noise plus hidden SFCAR signal: sigma2 + (2pi)^2 f.
CirculantSpectrum observation_eigs(const SfcarModel& model, double sigma2, std::size_t n,
                                   CirculantMode mode = CirculantMode::spectrum_samples);

/// First row of the circulant covariance, c_h for every torus lag h.
std::vector<double> circulant_covariance(const CirculantSpectrum& cs);

using Rng = std::mt19937_64;

/// Independent generator for trial t of a run seeded with seed. Trials can
/// run in any order or in parallel and still draw the same numbers.
Rng trial_stream(std::uint64_t seed, std::uint64_t trial);

/// Real zero-mean Gaussian field with covariance C by spectral synthesis.
std::vector<double> sample_field(const CirculantSpectrum& cs, Rng& rng);

/// Per-node log-likelihood ratio log p0(y)/p1(y) / N of white noise (p0)
/// against the circulant alternative cs1 (p1), in the DFT domain.
double llr_per_node(std::span<const double> y, double sigma2, const CirculantSpectrum& cs1);

struct McReport {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Sample mean and standard error of per-trial values.
McReport summarize(std::span<const double> values, std::size_t n, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSeed = 20080601;

/// Monte Carlo mean of llr_per_node under white noise, against the torus
/// hidden-SFCAR alternative. Needs trials >= 30.
McReport mc_kli_estimate(const SfcarModel& model, double sigma2, std::size_t n,
                         std::size_t trials, std::uint64_t seed = kDefaultSeed,
                         unsigned threads = 0);

struct LimitPoint {
  std::size_t n;
  double value;   ///< finite-n quantity
  double target;  ///< its spectral-integral limit
  double gap;     ///< |value - target|
};

/// (1/n^2) log det of the dense block-Toeplitz covariance of the observation
/// against (1/(2pi)^2) int log((2pi)^2 f1). Each n <= 48. Throws
/// SingularError when the assembled covariance is not positive definite.
std::vector<LimitPoint> logdet_convergence(const SfcarModel& model, double sigma2,
                                           std::span<const std::size_t> n_list,
                                           std::size_t cov_grid = 1024);

struct QuadformCheck {
  McReport dense;       ///< (1/n^2) y' Sigma1^{-1} y with the Toeplitz covariance
  McReport circulant;   ///< same with the wrapped circulant C
  double target;        ///< (1/(2pi)^2) int sigma2 / ((2pi)^2 f1)
};

/// Both quadratic forms on the same white-noise draws. n <= 32.
QuadformCheck quadform_limit_check(const SfcarModel& model, double sigma2, std::size_t n,
                                   std::size_t trials, std::uint64_t seed = kDefaultSeed,
                                   std::size_t cov_grid = 1024);

struct TraceNormPoint {
  std::size_t n;
  double per_node_trace_norm;  ///< ||Sigma1 - C||_1 / n^2
};

/// Per-node trace norm of the block-Toeplitz covariance minus its wrapped
/// circulant approximation. n <= 32.
std::vector<TraceNormPoint> toeplitz_circulant_gap(const SfcarModel& model, double sigma2,
                                                   std::span<const std::size_t> n_list,
                                                   std::size_t cov_grid = 1024);

}  // namespace gmrfinfo
