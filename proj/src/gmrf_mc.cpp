#include "gmrfinfo/gmrf_mc.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gmrfinfo/error.hpp"
#include "gmrfinfo/fft.hpp"
#include "gmrfinfo/kernels.hpp"
#include "gmrfinfo/parallel.hpp"

namespace gmrfinfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<int> extents_of(const CirculantSpectrum& cs) {
  return std::vector<int>(cs.dim, static_cast<int>(cs.n));
}

// Signed torus lag: h for h <= n/2, otherwise h - n.
int wrap_lag(std::size_t h, std::size_t n) {
  return h <= n / 2 ? static_cast<int>(h) : static_cast<int>(h) - static_cast<int>(n);
}

void check_eigs(const CirculantSpectrum& cs) {
  for (std::size_t i = 0; i < cs.eigs.size(); ++i) {
    if (!(cs.eigs[i] > 0.0) || !std::isfinite(cs.eigs[i])) {
      throw ModelError("circulant eigenvalue " + std::to_string(i) + " is " +
                       std::to_string(cs.eigs[i]) + "; the model is not valid on this torus");
    }
  }
}

std::vector<double> white_noise(std::size_t count, double sigma2, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(sigma2));
  std::vector<double> y(count);
  for (double& v : y) v = normal(rng);
  return y;
}

double spectral_mean(const SpectralDensity& f, std::size_t grid, double (*g)(double, double),
                     double arg) {
  const std::vector<double> s = f.sample_grid(grid, GridLayout::centered);
  const double norm = std::pow(kTwoPi, f.dimension());
  double acc = 0.0;
  for (double v : s) acc += g(norm * v, arg);
  return acc / static_cast<double>(s.size());
}

void check_dense_size(std::size_t n, std::size_t limit, const char* what) {
  if (n < 2 || n > limit) {
    throw DomainError(std::string(what) + ": lattice side must lie in [2, " +
                      std::to_string(limit) + "]");
  }
}

// Dense covariance of an n x n lattice from a stationary covariance
// function of the lag, sites ordered row-major.
template <class Cov>
Eigen::MatrixXd assemble(std::size_t n, Cov&& cov) {
  const auto N = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXd m(N, N);
  const int ni = static_cast<int>(n);
  for (int i1 = 0; i1 < ni; ++i1) {
    for (int i2 = 0; i2 < ni; ++i2) {
      for (int j1 = 0; j1 < ni; ++j1) {
        for (int j2 = 0; j2 < ni; ++j2) {
          m(i1 * ni + i2, j1 * ni + j2) = cov(i1 - j1, i2 - j2);
        }
      }
    }
  }
  return m;
}

Eigen::MatrixXd toeplitz_observation(const AutocovarianceTable& gamma, double sigma2,
                                     std::size_t n) {
  return assemble(n, [&](int h1, int h2) {
    return gamma.at(h1, h2) + ((h1 == 0 && h2 == 0) ? sigma2 : 0.0);
  });
}

Eigen::MatrixXd circulant_matrix(const CirculantSpectrum& cs) {
  const std::vector<double> c = circulant_covariance(cs);
  const int ni = static_cast<int>(cs.n);
  return assemble(cs.n, [&](int h1, int h2) {
    const int a = ((h1 % ni) + ni) % ni;
    const int b = ((h2 % ni) + ni) % ni;
    return c[static_cast<std::size_t>(a * ni + b)];
  });
}

Eigen::LLT<Eigen::MatrixXd> factor(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw SingularError(
        "assembled covariance is not positive definite; refine the autocovariance grid");
  }
  return llt;
}

}  // namespace

CirculantSpectrum circulant_eigs(const SpectralDensity& spec, std::size_t n, CirculantMode mode,
                                 std::size_t cov_grid) {
  if (n < 4) throw DomainError("circulant lattice side must be >= 4");
  CirculantSpectrum cs;
  cs.n = n;
  cs.dim = spec.dimension();
  cs.mode = mode;

  if (mode == CirculantMode::spectrum_samples) {
    cs.eigs = spec.sample_grid(n, GridLayout::dft);
    const double norm = std::pow(kTwoPi, cs.dim);
    for (double& v : cs.eigs) v *= norm;
  } else {
    if (2 * n > cov_grid) throw DomainError("autocovariance grid too coarse for this lattice");
    const AutocovarianceTable gamma = autocovariance_table(spec, cov_grid);
    std::size_t total = 1;
    for (int d = 0; d < cs.dim; ++d) total *= n;
    std::vector<std::complex<double>> buf(total);
    std::vector<std::size_t> idx(cs.dim, 0);
    std::vector<int> lag(cs.dim);
    for (std::size_t flat = 0; flat < total; ++flat) {
      for (int d = 0; d < cs.dim; ++d) lag[d] = wrap_lag(idx[d], n);
      buf[flat] = gamma.at(lag);
      for (int d = cs.dim - 1; d >= 0; --d) {
        if (++idx[d] < n) break;
        idx[d] = 0;
      }
    }
    fft::transform(buf, extents_of(cs), fft::Direction::forward);
    cs.eigs.resize(total);
    for (std::size_t i = 0; i < total; ++i) cs.eigs[i] = buf[i].real();
  }
  check_eigs(cs);
  return cs;
}

CirculantSpectrum observation_eigs(const SfcarModel& model, double sigma2, std::size_t n,
                                   CirculantMode mode) {
  return circulant_eigs(sfcar_spectrum(model).plus_white_noise(sigma2), n, mode);
}

std::vector<double> circulant_covariance(const CirculantSpectrum& cs) {
  std::vector<std::complex<double>> buf(cs.eigs.begin(), cs.eigs.end());
  fft::transform(buf, extents_of(cs), fft::Direction::backward);
  std::vector<double> c(buf.size());
  const double inv = 1.0 / static_cast<double>(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) c[i] = buf[i].real() * inv;
  return c;
}

Rng trial_stream(std::uint64_t seed, std::uint64_t trial) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

std::vector<double> sample_field(const CirculantSpectrum& cs, Rng& rng) {
  // Y = F diag(sqrt(lambda/N)) z with z standard complex normal has
  // E[Y Y^H] = 2C and E[Y Y^T] = 0, so Re Y has covariance exactly C.
  std::normal_distribution<double> normal;
  const double inv_n = 1.0 / static_cast<double>(cs.size());
  std::vector<std::complex<double>> buf(cs.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    buf[i] = std::sqrt(cs.eigs[i] * inv_n) * std::complex<double>(re, im);
  }
  fft::transform(buf, extents_of(cs), fft::Direction::forward);
  std::vector<double> y(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) y[i] = buf[i].real();
  return y;
}

double llr_per_node(std::span<const double> y, double sigma2, const CirculantSpectrum& cs1) {
  if (y.size() != cs1.size()) throw DomainError("llr_per_node: field length does not match");
  if (!(sigma2 > 0.0)) throw DomainError("llr_per_node: sigma2 must be positive");
  const auto& table = kernels::active();
  const std::size_t N = y.size();

  std::vector<double> ratio(N);
  std::vector<double> weight(N);
  for (std::size_t i = 0; i < N; ++i) {
    ratio[i] = cs1.eigs[i] / sigma2;
    weight[i] = 1.0 / cs1.eigs[i] - 1.0 / sigma2;
  }
  std::vector<std::complex<double>> yh(y.begin(), y.end());
  fft::transform(yh, extents_of(cs1), fft::Direction::forward);
  // Unitary DFT: |y^|^2 = |F y|^2 / N.
  const double quad = table.weighted_norm_sum(yh, weight) / static_cast<double>(N);
  return (0.5 * table.log_sum(ratio) + 0.5 * quad) / static_cast<double>(N);
}

McReport summarize(std::span<const double> values, std::size_t n, std::uint64_t seed) {
  if (values.size() < 2) throw DomainError("need at least two trials");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(values.size())), values.size(), n, seed};
}

McReport mc_kli_estimate(const SfcarModel& model, double sigma2, std::size_t n,
                         std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 30) throw DomainError("mc_kli_estimate needs at least 30 trials");
  const CirculantSpectrum cs1 = observation_eigs(model, sigma2, n);
  std::vector<double> llr(trials);
  parallel_for(trials, threads == 0 ? default_threads() : threads, [&](std::size_t t) {
    Rng rng = trial_stream(seed, t);
    const std::vector<double> y = white_noise(cs1.size(), sigma2, rng);
    llr[t] = llr_per_node(y, sigma2, cs1);
  });
  return summarize(llr, n, seed);
}

std::vector<LimitPoint> logdet_convergence(const SfcarModel& model, double sigma2,
                                           std::span<const std::size_t> n_list,
                                           std::size_t cov_grid) {
  const SpectralDensity f1 = sfcar_spectrum(model).plus_white_noise(sigma2);
  const AutocovarianceTable gamma = autocovariance_table(sfcar_spectrum(model), cov_grid);
  const double target =
      spectral_mean(f1, cov_grid, [](double v, double) { return std::log(v); }, 0.0);
  std::vector<LimitPoint> out;
  for (std::size_t n : n_list) {
    check_dense_size(n, 48, "logdet_convergence");
    const auto llt = factor(toeplitz_observation(gamma, sigma2, n));
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double value = logdet / static_cast<double>(n * n);
    out.push_back({n, value, target, std::abs(value - target)});
  }
  return out;
}

QuadformCheck quadform_limit_check(const SfcarModel& model, double sigma2, std::size_t n,
                                   std::size_t trials, std::uint64_t seed,
                                   std::size_t cov_grid) {
  check_dense_size(n, 32, "quadform_limit_check");
  if (trials < 2) throw DomainError("quadform_limit_check needs at least two trials");
  const SpectralDensity f1 = sfcar_spectrum(model).plus_white_noise(sigma2);
  const AutocovarianceTable gamma = autocovariance_table(sfcar_spectrum(model), cov_grid);
  const auto llt = factor(toeplitz_observation(gamma, sigma2, n));
  const CirculantSpectrum cs = circulant_eigs(f1, n, CirculantMode::wrapped_covariance, cov_grid);

  const std::size_t N = n * n;
  std::vector<double> inv_eigs(N);
  for (std::size_t i = 0; i < N; ++i) inv_eigs[i] = 1.0 / cs.eigs[i];
  const auto& table = kernels::active();

  std::vector<double> dense(trials);
  std::vector<double> circ(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_stream(seed, t);
    const std::vector<double> y = white_noise(N, sigma2, rng);
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(N));
    dense[t] = yv.dot(llt.solve(yv)) / static_cast<double>(N);
    std::vector<std::complex<double>> yh(y.begin(), y.end());
    fft::transform(yh, extents_of(cs), fft::Direction::forward);
    circ[t] = table.weighted_norm_sum(yh, inv_eigs) / static_cast<double>(N * N);
  }
  const double target = spectral_mean(
      f1, cov_grid, [](double v, double s2) { return s2 / v; }, sigma2);
  return {summarize(dense, n, seed), summarize(circ, n, seed), target};
}

std::vector<TraceNormPoint> toeplitz_circulant_gap(const SfcarModel& model, double sigma2,
                                                   std::span<const std::size_t> n_list,
                                                   std::size_t cov_grid) {
  const SpectralDensity f1 = sfcar_spectrum(model).plus_white_noise(sigma2);
  const AutocovarianceTable gamma = autocovariance_table(sfcar_spectrum(model), cov_grid);
  std::vector<TraceNormPoint> out;
  for (std::size_t n : n_list) {
    check_dense_size(n, 32, "toeplitz_circulant_gap");
    const CirculantSpectrum cs =
        circulant_eigs(f1, n, CirculantMode::wrapped_covariance, cov_grid);
    const Eigen::MatrixXd diff = toeplitz_observation(gamma, sigma2, n) - circulant_matrix(cs);
    // The difference is symmetric, so its singular values are the absolute
    // eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(diff, Eigen::EigenvaluesOnly);
    out.push_back({n, eig.eigenvalues().cwiseAbs().sum() / static_cast<double>(n * n)});
  }
  return out;
}

}  // namespace gmrfinfo
