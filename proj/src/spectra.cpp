#include "gmrfinfo/spectra.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <algorithm>
#include <numbers>
#include <sstream>

#include "gmrfinfo/error.hpp"
#include "gmrfinfo/fft.hpp"
#include "gmrfinfo/specfun.hpp"

namespace gmrfinfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi2 = kTwoPi * kTwoPi;

std::size_t grid_total(std::size_t n, int dim) {
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= n;
  return total;
}

}  // namespace

// --- EdgeDependence -------------------------------------------------------

EdgeDependence EdgeDependence::from_zeta(double zeta) {
  if (!(zeta >= 0.0) || !(zeta <= 0.25)) {
    throw DomainError("edge dependence zeta must lie in [0, 1/4], got " + std::to_string(zeta));
  }
  const double gap = 0.25 - zeta;
  return {zeta, gap, std::log(gap)};
}

EdgeDependence EdgeDependence::from_gap(double gap) {
  if (!(gap >= 0.0) || !(gap <= 0.25)) {
    throw DomainError("edge dependence gap must lie in [0, 1/4], got " + std::to_string(gap));
  }
  return {0.25 - gap, gap, std::log(gap)};
}

EdgeDependence EdgeDependence::from_log_gap(double log_gap) {
  constexpr double kLogQuarter = -1.3862943611198906;
  if (std::isnan(log_gap) || log_gap > kLogQuarter + 1e-15) {
    throw DomainError("edge dependence log gap must be <= log(1/4)");
  }
  log_gap = std::min(log_gap, kLogQuarter);
  const double gap = std::exp(log_gap);
  return {0.25 - gap, gap, log_gap};
}

double EdgeDependence::power_factor() const {
  if (perfectly_correlated()) return std::numeric_limits<double>::infinity();
  if (zeta_ == 0.0) return 1.0;
  // k = 4 zeta, so k'^2 = (1 - k)(1 + k) = 4 gap (1 + 4 zeta).
  const double log_kc = 0.5 * (std::log(4.0 * (1.0 + 4.0 * zeta_)) + log_gap_);
  return (2.0 / std::numbers::pi) * specfun::elliptic_k_log_complementary(std::min(log_kc, 0.0));
}

// --- models ---------------------------------------------------------------

SfcarModel::SfcarModel(double kappa_, EdgeDependence edge_) : kappa(kappa_), edge(edge_) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ModelError("SFCAR conditional precision kappa must be positive and finite");
  }
}

SfcarModel SfcarModel::with_snr(double snr, double sigma2, EdgeDependence edge) {
  if (!(snr > 0.0) || !(sigma2 > 0.0)) {
    throw DomainError("with_snr: snr and sigma2 must be positive");
  }
  if (edge.perfectly_correlated()) {
    throw SingularError("with_snr: a perfectly correlated SFCAR field has infinite power");
  }
  return {edge.power_factor() / (snr * sigma2), edge};
}

CarModel::CarModel(std::map<Offset, double> theta) : theta_(std::move(theta)) {
  const auto centre = theta_.find({0, 0});
  if (centre == theta_.end() || !(centre->second > 0.0)) {
    throw ModelError("CAR model requires theta_00 > 0");
  }
  for (const auto& [off, v] : theta_) {
    const auto mirror = theta_.find({-off.first, -off.second});
    if (mirror == theta_.end() || mirror->second != v) {
      std::ostringstream os;
      os << "CAR model requires theta_ij = theta_-i-j; offset (" << off.first << "," << off.second
         << ") has no matching mirror";
      throw ModelError(os.str());
    }
  }
  constexpr int kCheck = 256;
  for (int a = 0; a < kCheck; ++a) {
    for (int b = 0; b < kCheck; ++b) {
      const double w1 = -std::numbers::pi + kTwoPi * a / kCheck;
      const double w2 = -std::numbers::pi + kTwoPi * b / kCheck;
      if (!(symbol(w1, w2) > 0.0)) {
        throw ModelError("CAR model spectrum is not strictly positive on the validation grid");
      }
    }
  }
}

CarModel CarModel::from_sfcar(const SfcarModel& m) {
  const double lambda = m.zeta() * m.kappa;
  return CarModel({{{0, 0}, m.kappa},
                   {{1, 0}, -lambda},
                   {{-1, 0}, -lambda},
                   {{0, 1}, -lambda},
                   {{0, -1}, -lambda}});
}

double CarModel::symbol(double w1, double w2) const {
  double s = 0.0;
  for (const auto& [off, v] : theta_) s += v * std::cos(off.first * w1 + off.second * w2);
  return s;
}

// --- SpectralDensity ------------------------------------------------------

SpectralDensity::SpectralDensity(int dimension, Evaluator eval, std::string tag)
    : dim_(dimension), eval_(std::move(eval)), tag_(std::move(tag)) {
  if (dim_ < 1) throw DomainError("spectral density dimension must be >= 1");
}

SpectralDensity SpectralDensity::constant(int dimension, double value) {
  if (!(value >= 0.0)) throw DomainError("constant spectrum must be non-negative");
  return {dimension, [value](std::span<const double>) { return value; }, "white"};
}

std::vector<double> SpectralDensity::sample_grid(std::size_t n, GridLayout layout) const {
  const std::size_t total = grid_total(n, dim_);
  std::vector<double> out(total);
  std::vector<double> axis(n);
  for (std::size_t k = 0; k < n; ++k) {
    axis[k] = (layout == GridLayout::centered ? -std::numbers::pi : 0.0) +
              kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  }
  std::vector<double> omega(dim_);
  std::vector<std::size_t> idx(dim_, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int d = 0; d < dim_; ++d) omega[d] = axis[idx[d]];
    out[flat] = eval_(omega);
    for (int d = dim_ - 1; d >= 0; --d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }
  return out;
}

SpectralDensity SpectralDensity::plus_white_noise(double sigma2) const {
  const double level = sigma2 / std::pow(kTwoPi, dim_);
  auto inner = eval_;
  return {dim_, [inner, level](std::span<const double> w) { return inner(w) + level; },
          tag_ + "+noise"};
}

SpectralDensity car_spectrum(const CarModel& model) {
  return {2,
          [model](std::span<const double> w) {
            return 1.0 / (kFourPi2 * model.symbol(w[0], w[1]));
          },
          "car"};
}

SpectralDensity sfcar_spectrum(const SfcarModel& model) {
  const double kappa = model.kappa;
  const double zeta = model.zeta();
  const double gap = model.edge.gap();
  return {2,
          [kappa, zeta, gap](std::span<const double> w) {
            // 1 - 2 zeta (cos w1 + cos w2), rewritten so it stays accurate
            // when zeta is within rounding of 1/4.
            const double s1 = std::sin(0.5 * w[0]);
            const double s2 = std::sin(0.5 * w[1]);
            const double den = 4.0 * gap + 4.0 * zeta * (s1 * s1 + s2 * s2);
            if (den == 0.0) return std::numeric_limits<double>::infinity();
            return 1.0 / (kFourPi2 * kappa * den);
          },
          "sfcar"};
}

double signal_power(const SfcarModel& model) {
  if (model.edge.perfectly_correlated()) {
    throw SingularError("signal_power: infinite power at zeta = 1/4");
  }
  return model.edge.power_factor() / model.kappa;
}

double measurement_snr(const SfcarModel& model, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("measurement_snr: sigma2 must be positive");
  return signal_power(model) / sigma2;
}

// --- autocovariance -------------------------------------------------------

AutocovarianceTable::AutocovarianceTable(int dimension, std::size_t grid,
                                         std::vector<double> values)
    : dim_(dimension), grid_(grid), values_(std::move(values)) {}

double AutocovarianceTable::at(std::span<const int> lag) const {
  if (static_cast<int>(lag.size()) != dim_) {
    throw DomainError("autocovariance lag has the wrong dimension");
  }
  const auto n = static_cast<long>(grid_);
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) {
    if (std::abs(static_cast<long>(lag[d])) >= n / 2) {
      throw DomainError("autocovariance lag exceeds half the quadrature grid");
    }
    const long wrapped = ((lag[d] % n) + n) % n;
    flat = flat * grid_ + static_cast<std::size_t>(wrapped);
  }
  return values_[flat];
}

AutocovarianceTable autocovariance_table(const SpectralDensity& spec, std::size_t grid) {
  if (grid < 64 || grid % 2 != 0) {
    throw DomainError("autocovariance grid must be even and >= 64");
  }
  const int dim = spec.dimension();
  const std::vector<double> samples = spec.sample_grid(grid, GridLayout::centered);
  std::vector<std::complex<double>> buf(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw SingularError("autocovariance: spectrum is singular on the quadrature grid");
    }
    buf[i] = samples[i];
  }
  const std::vector<int> extents(dim, static_cast<int>(grid));
  fft::transform(buf, extents, fft::Direction::backward);

  // Nodes start at -pi, so e^{i h.w_k} = (-1)^{sum h} e^{2 pi i h.k / n}.
  const double cell = std::pow(kTwoPi / static_cast<double>(grid), dim);
  std::vector<double> values(buf.size());
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t flat = 0; flat < buf.size(); ++flat) {
    std::size_t parity = 0;
    for (int d = 0; d < dim; ++d) parity += idx[d];
    values[flat] = cell * buf[flat].real() * ((parity % 2 == 0) ? 1.0 : -1.0);
    for (int d = dim - 1; d >= 0; --d) {
      if (++idx[d] < grid) break;
      idx[d] = 0;
    }
  }
  return {dim, grid, std::move(values)};
}

double autocovariance(const SpectralDensity& spec, std::span<const int> lag, std::size_t grid) {
  return autocovariance_table(spec, grid).at(lag);
}

}  // namespace gmrfinfo
