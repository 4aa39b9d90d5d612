#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gmrfinfo {

/// Edge dependence factor zeta = lambda/kappa of the symmetric first-order
/// CAR field, 0 (i.i.d.) to 1/4 (perfectly correlated).
///
/// The distance to perfect correlation, gap = 1/4 - zeta, is stored
/// alongside zeta, together with its logarithm. Close to 1/4 the field's
/// power depends on gap only through log(gap), and densely spaced sensors
/// produce gaps far below the resolution of zeta (below 1e-300 once the edge
/// correlation passes about 0.995), so everything that needs 1 - 4 zeta
/// reads gap or log_gap.
class EdgeDependence {
 public:
  EdgeDependence() = default;

  static EdgeDependence from_zeta(double zeta);
  static EdgeDependence from_gap(double gap);
  /// log_gap = -infinity is the perfectly correlated field.
  static EdgeDependence from_log_gap(double log_gap);

  double zeta() const { return zeta_; }
  /// May underflow to 0 for a field that is not perfectly correlated.
  double gap() const { return gap_; }
  double log_gap() const { return log_gap_; }
  bool perfectly_correlated() const { return log_gap_ == -std::numeric_limits<double>::infinity(); }

  /// (2/pi) K(4 zeta): the SFCAR power for unit conditional precision.
  /// Infinite when perfectly correlated.
  double power_factor() const;

 private:
  EdgeDependence(double zeta, double gap, double log_gap)
      : zeta_(zeta), gap_(gap), log_gap_(log_gap) {}
  double zeta_ = 0.0;
  double gap_ = 0.25;
  double log_gap_ = -1.3862943611198906;  // log(1/4)
};

/// Symmetric first-order conditional autoregression on Z^2: conditional
/// precision kappa and equal dependence lambda = zeta*kappa on the four
/// nearest neighbours.
struct SfcarModel {
  SfcarModel(double kappa, EdgeDependence edge);
  SfcarModel(double kappa, double zeta) : SfcarModel(kappa, EdgeDependence::from_zeta(zeta)) {}

  /// Model whose marginal power gives the requested SNR over noise variance sigma2.
  static SfcarModel with_snr(double snr, double sigma2, EdgeDependence edge);

  double kappa;
  EdgeDependence edge;

  double zeta() const { return edge.zeta(); }
};

/// General 2-D CAR model given by its coefficients theta_{ij}; the
/// conditional precision is theta_00.
class CarModel {
 public:
  using Offset = std::pair<int, int>;

  /// Validates theta_00 > 0, theta_{ij} = theta_{-i,-j}, and a strictly
  /// positive spectrum on a 256x256 grid. Throws ModelError otherwise.
  explicit CarModel(std::map<Offset, double> theta);

  static CarModel from_sfcar(const SfcarModel& m);

  const std::map<Offset, double>& theta() const { return theta_; }

  /// sum theta_{ij} cos(i w1 + j w2), the reciprocal of (2pi)^2 f.
  double symbol(double w1, double w2) const;

 private:
  std::map<Offset, double> theta_;
};

/// Sampled layouts of [-pi, pi)^d grids with n nodes per axis.
enum class GridLayout {
  centered,  ///< w_k = -pi + 2 pi k / n, trapezoid nodes over [-pi, pi)
  dft,       ///< w_k = 2 pi k / n, the DFT frequencies
};

/// A d-dimensional power spectral density on [-pi, pi)^d, 2pi-periodic in
/// each coordinate. Evaluation may return +infinity at an isolated
/// singular frequency (SFCAR at zeta = 1/4, at the origin).
class SpectralDensity {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  SpectralDensity(int dimension, Evaluator eval, std::string tag);

  /// White spectrum: the same value everywhere.
  static SpectralDensity constant(int dimension, double value);

  double operator()(std::span<const double> omega) const { return eval_(omega); }
  double operator()(double w1, double w2) const {
    const std::array<double, 2> w{w1, w2};
    return eval_(w);
  }

  int dimension() const { return dim_; }
  const std::string& tag() const { return tag_; }

  /// Row-major samples on an n^d grid.
  std::vector<double> sample_grid(std::size_t n, GridLayout layout) const;

  /// f + sigma2 / (2pi)^d: the spectrum of this field plus white noise.
  SpectralDensity plus_white_noise(double sigma2) const;

 private:
  int dim_;
  Evaluator eval_;
  std::string tag_;
};

SpectralDensity car_spectrum(const CarModel& model);
SpectralDensity sfcar_spectrum(const SfcarModel& model);

/// gamma_00 = 2 K(4 zeta) / (pi kappa). Throws SingularError at zeta = 1/4.
double signal_power(const SfcarModel& model);

/// Measurement SNR P / sigma^2.
double measurement_snr(const SfcarModel& model, double sigma2);

/// All autocovariances gamma_h = int f(w) e^{i h.w} dw, obtained with one
/// d-dimensional DFT of trapezoid samples (the inverse transform evaluated
/// on an n^d grid). Lags with |h_k| < n/2 are meaningful.
class AutocovarianceTable {
 public:
  AutocovarianceTable(int dimension, std::size_t grid, std::vector<double> values);

  double at(std::span<const int> lag) const;
  double at(int h1, int h2) const {
    const std::array<int, 2> h{h1, h2};
    return at(h);
  }
  int dimension() const { return dim_; }
  std::size_t grid() const { return grid_; }

 private:
  int dim_;
  std::size_t grid_;
  std::vector<double> values_;
};

/// Throws DomainError unless grid >= 64 and even, SingularError if the
/// spectrum is infinite at a grid node.
AutocovarianceTable autocovariance_table(const SpectralDensity& spec, std::size_t grid);

double autocovariance(const SpectralDensity& spec, std::span<const int> lag, std::size_t grid);

}  // namespace gmrfinfo
