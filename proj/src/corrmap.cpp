#include "gmrfinfo/corrmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmrfinfo/error.hpp"
#include "gmrfinfo/specfun.hpp"

namespace gmrfinfo {

namespace {

constexpr double kSeriesBelow = 1e-4;

// rho at rho = 1/2; above it bisection runs on log(gap).
double split_zeta() {
  static const double z = [] {
    double lo = 0.0, hi = 0.25;
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
      const double mid = 0.5 * (lo + hi);
      (rho_from_zeta(mid) < 0.5 ? lo : hi) = mid;
    }
    return hi;
  }();
  return z;
}

}  // namespace

PhysicalField::PhysicalField(double alpha_) : alpha(alpha_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("diffusion rate alpha must be positive and finite");
  }
}

double rho_from_zeta(EdgeDependence edge) {
  if (edge.perfectly_correlated()) return 1.0;
  const double zeta = edge.zeta();
  if (zeta < kSeriesBelow) {
    // (2/pi) K(k) = 1 + k^2/4 + 9 k^4/64 + 25 k^6/256 + ..., k = 4 zeta.
    const double k = 4.0 * zeta;
    const double k2 = k * k;
    const double excess_over_k = k * (0.25 + k2 * (9.0 / 64.0 + k2 * (25.0 / 256.0)));
    return excess_over_k / (1.0 + k * excess_over_k);
  }
  const double p = edge.power_factor();
  return (p - 1.0) / (4.0 * zeta * p);
}

double rho_from_zeta(double zeta) { return rho_from_zeta(EdgeDependence::from_zeta(zeta)); }

double one_minus_rho(EdgeDependence edge) {
  if (edge.perfectly_correlated()) return 0.0;
  if (edge.zeta() < 0.125) return 1.0 - rho_from_zeta(edge);
  // 4 zeta P - (P - 1) = 1 - 4 gap P.
  const double p = edge.power_factor();
  return (1.0 - 4.0 * edge.gap() * p) / (4.0 * edge.zeta() * p);
}

EdgeDependence zeta_from_rho(double rho) {
  if (!(rho >= 0.0) || !(rho <= 1.0)) {
    throw DomainError("edge correlation must lie in [0, 1], got " + std::to_string(rho));
  }
  if (rho == 0.0) return EdgeDependence::from_zeta(0.0);
  if (rho == 1.0) return EdgeDependence::from_zeta(0.25);

  const double z_half = split_zeta();
  if (rho <= 0.5) {
    double lo = 0.0, hi = z_half;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (rho_from_zeta(mid) < rho ? lo : hi) = mid;
    }
    return EdgeDependence::from_zeta(0.5 * (lo + hi));
  }

  // rho increases as log(gap) decreases. rho = 1 - 2^-53 already needs
  // log(gap) near -3e16, so the bracket below covers every double rho < 1.
  const double target = 1.0 - rho;
  double hi = std::log(0.25 - z_half);
  double lo = -1e18;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) break;
    (one_minus_rho(EdgeDependence::from_log_gap(mid)) < target ? lo : hi) = mid;
  }
  return EdgeDependence::from_log_gap(0.5 * (lo + hi));
}

double rho_from_spacing(const PhysicalField& field, double dn) {
  if (!(dn >= 0.0)) throw DomainError("sensor spacing must be non-negative");
  if (dn == 0.0) return 1.0;
  const double x = field.alpha * dn;
  if (x > 700.0) return 0.0;
  return std::clamp(x * specfun::bessel_k1(x), 0.0, 1.0);
}

EdgeDependence zeta_from_spacing(const PhysicalField& field, double dn) {
  return zeta_from_rho(rho_from_spacing(field, dn));
}

}  // namespace gmrfinfo
