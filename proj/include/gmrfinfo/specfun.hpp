#pragma once

namespace gmrfinfo::specfun {

/// Complete elliptic integral of the first kind as a function of the
/// modulus k:  K(k) = int_0^{pi/2} (1 - k^2 sin^2 t)^{-1/2} dt.
///
/// Evaluated by the arithmetic-geometric mean on the complementary modulus
/// k' = sqrt((1-k)(1+k)). Very close to k = 1 the logarithmic expansion
/// K ~ ln(4/k') + (k'^2/4)(ln(4/k') - 1) is used instead.
/// Throws DomainError unless 0 <= k < 1.
double elliptic_k(double k);

/// K expressed through the complementary modulus k' in (0, 1]. Lets callers
/// that know k' more accurately than k (fields near perfect correlation)
/// keep full precision. k' = 1 gives pi/2.
double elliptic_k_complementary(double kc);

/// Same, from log k'. Reaches moduli so close to 1 that k' underflows.
double elliptic_k_log_complementary(double log_kc);

/// Modified Bessel function of the second kind, order one, for x > 0.
/// Throws DomainError for x <= 0.
double bessel_k1(double x);

/// Above this argument bessel_k1 switches to the large-x expansion.
inline constexpr double kBesselAsymptoticCrossover = 25.0;

namespace detail {
// Individual branches, exposed for the seam-agreement tests.
double bessel_k1_series(double x);
double bessel_k1_integral(double x);
double bessel_k1_asymptotic(double x);
}  // namespace detail

}  // namespace gmrfinfo::specfun
