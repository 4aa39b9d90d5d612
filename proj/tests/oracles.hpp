#pragma once

// Reference computations that share no code with the library: adaptive
// Gauss-Kronrod quadrature and brute-force spectral sums over the full grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kXk{0.991455371120812639, 0.949107912342758525,
                                           0.864864423359769073, 0.741531185599394440,
                                           0.586087235467691130, 0.405845151377397167,
                                           0.207784955007898468, 0.000000000000000000};
inline constexpr std::array<double, 8> kWk{0.022935322010529225, 0.063092092629978553,
                                           0.104790010322250184, 0.140653259715525919,
                                           0.169004726639267903, 0.190350578064785410,
                                           0.204432940075298892, 0.209482141084727828};
inline constexpr std::array<double, 4> kWg{0.129484966168869693, 0.279705391489276668,
                                           0.381830050505118945, 0.417959183673469388};

inline void gk15(const Fn& f, double a, double b, double& result, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  result = k * h;
  error = std::abs((k - g) * h);
}

// Bisects until the Kronrod-Gauss difference is below rel times the
// magnitude of the whole integral.
inline double adapt(const Fn& f, double a, double b, double scale, double rel, int depth) {
  double r, e;
  gk15(f, a, b, r, e);
  if (e <= rel * scale || depth >= 40) return r;
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, scale, rel, depth + 1) + adapt(f, m, b, scale, rel, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b]; each panel's error
/// estimate is held below rel times a first estimate of the integral.
inline double integrate(const Fn& f, double a, double b, double rel = 1e-14) {
  double r, e;
  detail::gk15(f, a, b, r, e);
  const double scale = std::max(std::abs(r), 1e-300);
  return detail::adapt(f, a, b, scale, rel, 0);
}

/// K as a function of the complementary modulus k' = sqrt(1 - k^2):
/// int_0^{pi/2} (sin^2 u + k'^2 cos^2 u)^{-1/2} du (u = pi/2 - t), with
/// panels shrinking geometrically toward the peak at u = 0, whose width is
/// about k'.
inline double elliptic_k_comp(double kc) {
  const auto f = [kc](double u) {
    const double c = std::cos(u), s = std::sin(u);
    return 1.0 / std::sqrt(s * s + kc * kc * c * c);
  };
  double sum = 0.0;
  double hi = std::numbers::pi / 2;
  for (double w = std::numbers::pi / 4; w > 0.25 * kc; w /= 4) {
    sum += integrate(f, w, hi);
    hi = w;
  }
  return sum + integrate(f, 0.0, hi);
}

inline double elliptic_k(double k) { return elliptic_k_comp(std::sqrt((1.0 - k) * (1.0 + k))); }

/// K1(x) = int_0^inf exp(-x cosh t) cosh t dt, truncated where the integrand
/// is below exp(-745).
inline double bessel_k1(double x) {
  const auto f = [x](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(t); };
  const double top = std::acosh(std::max(1.0, 760.0 / x));
  return integrate(f, 0.0, top, 1e-14);
}

/// (1/(2pi)^2) * sum over an n x n midpoint-free uniform grid of g(w1, w2),
/// i.e. the mean of g over [-pi, pi)^2 on nodes -pi + 2pi j / n.
inline double grid_mean(const std::function<double(double, double)>& g, int n) {
  const double pi = std::numbers::pi;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w1 = -pi + 2 * pi * i / n;
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += g(w1, -pi + 2 * pi * j / n);
    sum += row;
  }
  return sum / (static_cast<double>(n) * n);
}

/// 1/2 log(1+x) - 1/2 x/(1+x), from its power series in x when |x| is small.
inline double kli_term(double x) {
  if (std::abs(x) >= 1e-3) return 0.5 * std::log1p(x) - 0.5 * x / (1.0 + x);
  double sum = 0.0, p = -x;
  for (int j = 2; j < 10; ++j) {
    p *= -x;
    sum += p * (j - 1) / j;
  }
  return 0.5 * sum;
}

/// Per-node SFCAR rates by direct evaluation of the spectral integrals on
/// the full grid. x = snr / (P (1 - 2 zeta (cos w1 + cos w2))), P the
/// normalised power (2/pi) K(4 zeta).
inline double sfcar_kli(double snr, double zeta, int n) {
  const double P = 2.0 / std::numbers::pi * elliptic_k(4 * zeta);
  return grid_mean(
      [&](double a, double b) {
        const double den = 1.0 - 2.0 * zeta * (std::cos(a) + std::cos(b));
        if (den <= 0.0) return 0.0;
        return kli_term(snr / (P * den));
      },
      n);
}

inline double sfcar_mi(double snr, double zeta, int n) {
  const double P = 2.0 / std::numbers::pi * elliptic_k(4 * zeta);
  return grid_mean(
      [&](double a, double b) {
        const double den = 1.0 - 2.0 * zeta * (std::cos(a) + std::cos(b));
        if (den <= 0.0) return 0.0;
        return 0.5 * std::log1p(snr / (P * den));
      },
      n);
}

/// SFCAR rate through the density of states of u = sin^2(w1/2) + sin^2(w2/2)
/// under uniform frequencies, (2/pi^2) K(sqrt(u (2 - u))) on [0, 2]:
///   rate = int_0^2 phi(snr / (P (4 gap + 4 zeta u))) (2/pi^2) K du.
/// A one-dimensional integral that resolves any peak width, used for
/// strongly correlated fields. log_gap = log(1/4 - zeta); P = (2/pi) K(4 zeta)
/// with k' = sqrt(4 gap (1 + 4 zeta)), from its logarithm when k' underflows.
inline double sfcar_rate_dos(bool mi, double snr, double log_gap) {
  const double gap = std::exp(log_gap);
  const double zeta = 0.25 - gap;
  const double log_kc = 0.5 * (std::log(4.0 * (1.0 + 4.0 * zeta)) + log_gap);
  const double K = log_kc < -40.0 ? std::log(4.0) - log_kc : elliptic_k_comp(std::exp(log_kc));
  const double P = 2.0 / std::numbers::pi * K;
  const auto f = [&](double u) {
    const double x = snr / (P * (4.0 * gap + 4.0 * zeta * u));
    const double phi = mi ? 0.5 * std::log1p(x) : kli_term(x);
    // The library K is not used; near u = 1, where 1 - k^2 cancels, the
    // quadrature in k' takes over from the standard library.
    const double kc = std::abs(1.0 - u);
    const double weight = kc > 0.1 ? std::comp_ellint_1(std::sqrt(u * (2.0 - u))) : elliptic_k_comp(kc);
    return phi * 2.0 / (std::numbers::pi * std::numbers::pi) * weight;
  };
  // Geometric panels toward u = 0 down to well below both feature scales
  // (x = 1 at u_x; the constant term matters below u_b). Under u_b the
  // integrand is flat, and without it it grows like log(1/u), so nothing
  // is lost under 1e-12 u_x.
  const double ux = snr / (4.0 * zeta * P);
  const double finest = 1e-6 * std::min(ux, std::max(gap / zeta, 1e-6 * ux));
  double sum = integrate(f, 1.0, 2.0);
  double hi = 1.0;
  for (double lo = 0.25; lo > finest; lo *= 0.25) {
    sum += integrate(f, lo, hi);
    hi = lo;
  }
  return sum + integrate(f, 0.0, hi);
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

inline std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  return v;
}

}  // namespace oracle
