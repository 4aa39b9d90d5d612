#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gmrfinfo/error.hpp"
#include "gmrfinfo/gmrf_mc.hpp"
#include "gmrfinfo/inforates.hpp"

using namespace gmrfinfo;
constexpr double pi = std::numbers::pi;

namespace {

// Dense n^2 x n^2 block-circulant matrix from its first row.
Eigen::MatrixXd dense_circulant(const std::vector<double>& c, std::size_t n) {
  const auto N = static_cast<Eigen::Index>(n * n);
  Eigen::MatrixXd C(N, N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          C(i * n + j, k * n + l) = c[((k + n - i) % n) * n + (l + n - j) % n];
  return C;
}

}  // namespace

TEST_CASE("spectrum-sample eigenvalues") {
  const SfcarModel m(1.0, 0.2);
  const auto f = sfcar_spectrum(m);
  const auto cs = circulant_eigs(f, 8);
  REQUIRE(cs.size() == 64);
  CHECK(cs.dim == 2);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(cs.eigs[i * 8 + j] == doctest::Approx(4 * pi * pi * f(2 * pi * i / 8, 2 * pi * j / 8)).epsilon(1e-14));
  const auto obs = observation_eigs(m, 0.5, 8);
  CHECK(obs.eigs[3] == doctest::Approx(cs.eigs[3] + 0.5).epsilon(1e-14));
  CHECK_THROWS_AS(circulant_eigs(SpectralDensity::constant(2, 0.0), 4), ModelError);
}

TEST_CASE("wrapped covariance eigenvalues reproduce the wrapped autocovariance") {
  const SfcarModel m(1.0, 0.15);
  const std::size_t n = 12;
  const auto cs = circulant_eigs(sfcar_spectrum(m), n, CirculantMode::wrapped_covariance);
  const auto gamma = autocovariance_table(sfcar_spectrum(m), 1024);
  const auto c = circulant_covariance(cs);
  auto wrap = [n](std::size_t h) { return h <= n / 2 ? static_cast<int>(h) : static_cast<int>(h) - static_cast<int>(n); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      CHECK(c[i * n + j] == doctest::Approx(gamma.at(wrap(i), wrap(j))).epsilon(1e-11));
}

TEST_CASE("spectral LLR equals the dense-matrix LLR") {
  for (std::size_t n : {4u, 8u, 16u}) {
    const SfcarModel m = SfcarModel::with_snr(5.0, 1.2, EdgeDependence::from_zeta(0.2));
    const auto cs1 = observation_eigs(m, 1.2, n);
    const Eigen::MatrixXd C = dense_circulant(circulant_covariance(cs1), n);
    const Eigen::LLT<Eigen::MatrixXd> llt(C);
    REQUIRE(llt.info() == Eigen::Success);
    const double logdet = 2 * llt.matrixLLT().diagonal().array().log().sum();
    auto rng = trial_stream(7, n);
    std::normal_distribution<double> normal;
    std::vector<double> y(n * n);
    for (double& v : y) v = normal(rng);
    const Eigen::Map<const Eigen::VectorXd> Y(y.data(), static_cast<Eigen::Index>(y.size()));
    const double N = static_cast<double>(n * n);
    const double dense = (-0.5 * Y.squaredNorm() / 1.2 - 0.5 * N * std::log(1.2) + 0.5 * logdet +
                          0.5 * Y.dot(llt.solve(Y))) / N;
    CAPTURE(n);
    CHECK(std::abs(llr_per_node(y, 1.2, cs1) - dense) < 1e-8);
  }
}

TEST_CASE("sampled fields have the circulant covariance") {
  const SfcarModel m(1.0, 0.2);
  const std::size_t n = 8, trials = 4000;
  const auto cs = circulant_eigs(sfcar_spectrum(m), n);
  const auto c = circulant_covariance(cs);
  for (std::size_t lag : {0u, 1u, 9u, 27u}) {
    std::vector<double> per_trial(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = trial_stream(11, t);
      const auto y = sample_field(cs, rng);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          s += y[i * n + j] * y[((i + lag / n) % n) * n + (j + lag % n) % n];
      per_trial[t] = s / static_cast<double>(n * n);
    }
    const McReport r = summarize(per_trial, n, 11);
    CAPTURE(lag);
    CHECK(std::abs(r.mean - c[lag]) < 3 * r.std_error);
  }
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  const McReport r = summarize(v, 4, 9);
  CHECK(r.mean == 3.0);
  CHECK(r.std_error == doctest::Approx(std::sqrt(2.5 / 5)));
  CHECK(r.trials == 5);
  CHECK(r.seed == 9);
  CHECK_THROWS_AS(summarize(std::vector<double>{1.0}, 4, 1), DomainError);
}

TEST_CASE("trial streams are independent of evaluation order") {
  auto a = trial_stream(1, 5), b = trial_stream(1, 5), c = trial_stream(1, 6), d = trial_stream(2, 5);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("Monte Carlo KLI is reproducible and thread-invariant") {
  const auto m = SfcarModel::with_snr(2.0, 1.0, EdgeDependence::from_zeta(0.1));
  const McReport a = mc_kli_estimate(m, 1.0, 16, 64, 42, 1);
  const McReport b = mc_kli_estimate(m, 1.0, 16, 64, 42, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(mc_kli_estimate(m, 1.0, 16, 64, 43, 1).mean != a.mean);
  CHECK_THROWS_AS(mc_kli_estimate(m, 1.0, 16, 29, 42), DomainError);
}

TEST_CASE("Monte Carlo KLI on the torus matches the grid-n quadrature") {
  // Spectrum-sample circulant: the expected per-node LLR is exactly the
  // n-point rate quadrature.
  const auto edge = EdgeDependence::from_zeta(0.15);
  const auto m = SfcarModel::with_snr(3.0, 1.0, edge);
  const McReport r = mc_kli_estimate(m, 1.0, 32, 400, kDefaultSeed);
  CHECK(std::abs(r.mean - kli_rate_sfcar(3.0, edge, 32)) < 4 * r.std_error);
}

TEST_CASE("dense log-det and trace-norm gaps shrink like 1/n") {
  const auto m = SfcarModel::with_snr(10.0, 1.0, EdgeDependence::from_zeta(0.1));
  const std::vector<std::size_t> ns{8, 16, 32};
  const auto ld = logdet_convergence(m, 1.0, ns);
  REQUIRE(ld.size() == 3);
  for (int i = 0; i < 2; ++i) {
    const double ratio = ld[i + 1].gap / ld[i].gap;
    CHECK(ratio > 0.3);
    CHECK(ratio < 0.8);
  }
  const auto tn = toeplitz_circulant_gap(m, 1.0, ns);
  for (int i = 0; i < 2; ++i) {
    const double ratio = tn[i + 1].per_node_trace_norm / tn[i].per_node_trace_norm;
    CHECK(ratio > 0.3);
    CHECK(ratio < 0.8);
  }
  CHECK_THROWS_AS(logdet_convergence(m, 1.0, std::vector<std::size_t>{64}), DomainError);
  CHECK_THROWS_AS(toeplitz_circulant_gap(m, 1.0, std::vector<std::size_t>{40}), DomainError);
}
