#include "gmrfinfo/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gmrfinfo/error.hpp"

namespace gmrfinfo::specfun {

namespace {

// k' below which the AGM is replaced by the logarithmic expansion;
// corresponds to k >= 1 - 1e-12.
constexpr double kLogBranchKc = 1.4142135623730951e-6;

double agm_k(double kc) {
  double a = 1.0;
  double b = kc;
  for (int it = 0; it < 64; ++it) {
    if (std::abs(a - b) <= 1e-15 * a) break;
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

}  // namespace

double elliptic_k_complementary(double kc) {
  if (!(kc > 0.0) || kc > 1.0) {
    throw DomainError("elliptic_k: complementary modulus must lie in (0, 1], got " +
                      std::to_string(kc));
  }
  if (kc < kLogBranchKc) {
    const double l = std::log(4.0 / kc);
    return l + 0.25 * kc * kc * (l - 1.0);
  }
  return agm_k(kc);
}

double elliptic_k_log_complementary(double log_kc) {
  if (!(log_kc <= 0.0) || std::isinf(log_kc)) {
    throw DomainError("elliptic_k: log complementary modulus must be finite and <= 0");
  }
  if (log_kc < std::log(kLogBranchKc)) {
    const double l = std::log(4.0) - log_kc;
    const double kc = std::exp(log_kc);
    return l + 0.25 * kc * kc * (l - 1.0);
  }
  return agm_k(std::exp(log_kc));
}

double elliptic_k(double k) {
  if (!(k >= 0.0) || !(k < 1.0)) {
    throw DomainError("elliptic_k: modulus must lie in [0, 1), got " + std::to_string(k));
  }
  if (k == 0.0) return std::numbers::pi / 2.0;
  return elliptic_k_complementary(std::sqrt((1.0 - k) * (1.0 + k)));
}

namespace detail {

double bessel_k1_series(double x) {
  // K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!),
  // q = x^2/4.
  constexpr double euler_gamma = 0.57721566490153286061;
  const double q = 0.25 * x * x;
  double term = 1.0;  // q^k / (k! (k+1)!)
  double psi1 = -euler_gamma;        // psi(k+1)
  double psi2 = 1.0 - euler_gamma;   // psi(k+2)
  double i1_sum = 0.0;
  double psi_sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    i1_sum += term;
    psi_sum += (psi1 + psi2) * term;
    if (term < 1e-18 * i1_sum) break;
    psi1 += 1.0 / (k + 1);
    psi2 += 1.0 / (k + 2);
    term *= q / ((k + 1.0) * (k + 2.0));
  }
  const double i1 = 0.5 * x * i1_sum;
  return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * psi_sum;
}

double bessel_k1_integral(double x) {
  // Trapezoid rule on int_0^inf exp(-x cosh t) cosh t dt. The integrand is
  // entire and decays double-exponentially, so the rule converges like
  // exp(-pi^2 / h).
  constexpr double h = 0.125;
  double sum = 0.5;  // t = 0, with exp(-x) factored out
  for (int j = 1; j < 4096; ++j) {
    const double t = j * h;
    const double s = std::sinh(0.5 * t);
    const double v = std::exp(-2.0 * x * s * s) * std::cosh(t);
    sum += v;
    if (v < 1e-18 * sum) break;
  }
  return h * sum * std::exp(-x);
}

double bessel_k1_asymptotic(double x) {
  // K1(x) ~ sqrt(pi/(2x)) e^{-x} sum_k a_k / x^k, a_k = prod_j (4 - (2j-1)^2) / (k! 8^k).
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (4.0 - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) break;  // optimal truncation
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum;
}

}  // namespace detail

double bessel_k1(double x) {
  if (!(x > 0.0)) {
    throw DomainError("bessel_k1: argument must be positive, got " + std::to_string(x));
  }
  if (x <= 2.0) return detail::bessel_k1_series(x);
  if (x < kBesselAsymptoticCrossover) return detail::bessel_k1_integral(x);
  return detail::bessel_k1_asymptotic(x);
}

}  // namespace gmrfinfo::specfun
