#pragma once

#include "gmrfinfo/spectra.hpp"

namespace gmrfinfo {

/// Physical diffusion rate of the stochastic Laplace field, 1/metres.
struct PhysicalField {
  explicit PhysicalField(double alpha);
  double alpha;
};

/// Correlation between adjacent lattice samples of an SFCAR field:
/// rho = ((2/pi)K(4 zeta) - 1) / ((2/pi) 4 zeta K(4 zeta)). 0 at zeta = 0,
/// 1 when perfectly correlated.
double rho_from_zeta(EdgeDependence edge);
double rho_from_zeta(double zeta);

/// 1 - rho, kept accurate as rho approaches 1.
double one_minus_rho(EdgeDependence edge);

/// Inverse of rho_from_zeta by bisection: on zeta for rho <= 1/2 (to 1e-12
/// absolute) and on log(gap) above, since a correlation close to 1 puts
/// zeta within far less than a rounding unit of 1/4.
EdgeDependence zeta_from_rho(double rho);

/// Edge correlation of the physical field sampled at spacing dn:
/// alpha dn K1(alpha dn), clamped to [0, 1]; 1 at dn = 0.
double rho_from_spacing(const PhysicalField& field, double dn);

EdgeDependence zeta_from_spacing(const PhysicalField& field, double dn);

}  // namespace gmrfinfo
