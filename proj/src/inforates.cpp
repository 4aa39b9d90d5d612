#include "gmrfinfo/inforates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gmrfinfo/error.hpp"
#include "gmrfinfo/kernels.hpp"
#include "gmrfinfo/optimize.hpp"
#include "gmrfinfo/parallel.hpp"
#include "gmrfinfo/specfun.hpp"

namespace gmrfinfo {

namespace {

using kernels::RateKind;

unsigned resolve(unsigned threads) { return threads == 0 ? default_threads() : threads; }

void check_grid(std::size_t grid) {
  if (grid < 4 || grid % 2 != 0) throw DomainError("quadrature grid must be even and >= 4");
}

// One axis of the SFCAR quadrature. The frequency is graded as
// w = t - (4/3) sin t + (1/6) sin 2t with t on the uniform trapezoid grid:
// the map is smooth and 2 pi-periodic, so the rule keeps its spectral
// accuracy, while dw/dt = (8/3) sin^4(t/2) packs nodes like t^5 around
// w = 0, where the spectrum of a strongly correlated field is concentrated
// and its log singularity sits. The grid is folded about t = 0 (the
// integrand is even): node m carries s_m = sin^2(w_m / 2) and weight dw/dt,
// doubled for the mirror image except at t = 0 and t = pi. The weight
// vanishes at the origin, so the singular node of a perfectly correlated
// field never contributes.
struct FoldedAxis {
  std::vector<double> s;
  std::vector<double> w;
};

// The map cancels to O(t^5) near 0; its odd series is used there.
double graded_frequency(double t) {
  if (t > 0.05) return t - 4.0 / 3.0 * std::sin(t) + std::sin(2.0 * t) / 6.0;
  double w = 0.0;
  double power = t;  // t^(2k+1) / (2k+1)!, signed
  for (int k = 1; k <= 6; ++k) {
    power *= -t * t / ((2.0 * k) * (2.0 * k + 1.0));
    w += power * (std::ldexp(1.0, 2 * k + 1) / 6.0 - 4.0 / 3.0);
  }
  return w;
}

FoldedAxis folded_axis(std::size_t n) {
  const std::size_t half = n / 2;
  FoldedAxis axis;
  axis.s.resize(half + 1);
  axis.w.resize(half + 1);
  for (std::size_t m = 0; m <= half; ++m) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    const double v = std::sin(0.5 * graded_frequency(t));
    axis.s[m] = v * v;
    const double fold = (m == 0 || m == half) ? 1.0 : 2.0;
    const double h = std::sin(0.5 * t);
    const double h2 = h * h;
    axis.w[m] = fold * 8.0 / 3.0 * h2 * h2;
  }
  return axis;
}

double sfcar_rate(RateKind kind, double snr, const EdgeDependence& edge, std::size_t n,
                  unsigned threads) {
  if (!(snr >= 0.0)) throw DomainError("SNR must be non-negative");
  check_grid(n);
  if (snr == 0.0 || edge.perfectly_correlated()) return 0.0;

  // x = snr / ((2/pi) K(4 zeta) (1 - 2 zeta cos w1 - 2 zeta cos w2)),
  // with the bracket written as 4 gap + 4 zeta (s1 + s2).
  const double scale = snr / edge.power_factor();
  const double base0 = 4.0 * edge.gap();
  const double slope = 4.0 * edge.zeta();
  const FoldedAxis axis = folded_axis(n);
  const auto& table = kernels::active();

  // Node 0 has zero weight and is skipped, along with the division by zero
  // it would bring when gap underflows.
  const std::span<const double> s = std::span<const double>(axis.s).subspan(1);
  const std::span<const double> w = std::span<const double>(axis.w).subspan(1);
  std::vector<double> rows(s.size());
  parallel_for(rows.size(), resolve(threads), [&](std::size_t i) {
    rows[i] = w[i] * table.sfcar_row_sum(kind, s, w, base0 + slope * s[i], slope, scale);
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total / (static_cast<double>(n) * static_cast<double>(n));
}

// Shared driver of the generic d-D rates: transforms every sample into the
// per-bin argument x and averages phi(x) over the grid.
template <class ToX>
double general_rate(RateKind kind, const SpectralDensity& f, std::size_t grid, unsigned threads,
                    ToX&& to_x) {
  if (f.dimension() > 3) throw DomainError("rate quadrature supports dimension <= 3");
  check_grid(grid);
  std::vector<double> x = f.sample_grid(grid, GridLayout::centered);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = to_x(x[i]);

  const auto& table = kernels::active();
  const std::size_t chunks = std::min<std::size_t>(x.size(), 256);
  const std::size_t per = (x.size() + chunks - 1) / chunks;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, resolve(threads), [&](std::size_t c) {
    const std::size_t lo = c * per;
    const std::size_t hi = std::min(x.size(), lo + per);
    if (lo < hi) partial[c] = table.rate_sum(kind, std::span<const double>(x).subspan(lo, hi - lo));
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total / static_cast<double>(x.size());
}

}  // namespace

double kli_rate_general(const SpectralDensity& f1, double sigma2, std::size_t grid,
                        unsigned threads) {
  if (!(sigma2 > 0.0)) throw DomainError("noise variance must be positive");
  const double norm = std::pow(2.0 * std::numbers::pi, f1.dimension());
  // r = (2pi)^d f1 / sigma2; the KLI bin value is phi_kli(r - 1).
  return general_rate(RateKind::kli, f1, grid, threads, [&](double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("alternative spectrum must be positive and finite on the grid");
    }
    return (norm * v - sigma2) / sigma2;
  });
}

double mi_rate_general(const SpectralDensity& f, double sigma2, std::size_t grid,
                       unsigned threads) {
  if (!(sigma2 > 0.0)) throw DomainError("noise variance must be positive");
  const double norm = std::pow(2.0 * std::numbers::pi, f.dimension());
  return general_rate(RateKind::mi, f, grid, threads, [&](double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("signal spectrum must be non-negative and finite on the grid");
    }
    return norm * v / sigma2;
  });
}

double kli_rate_sfcar(double snr, EdgeDependence edge, std::size_t grid, unsigned threads) {
  return sfcar_rate(RateKind::kli, snr, edge, grid, threads);
}

double mi_rate_sfcar(double snr, EdgeDependence edge, std::size_t grid, unsigned threads) {
  return sfcar_rate(RateKind::mi, snr, edge, grid, threads);
}

InfoRateResult sfcar_rates(double snr, EdgeDependence edge, std::size_t grid, unsigned threads) {
  InfoRateResult r;
  r.grid = grid;
  r.kli = kli_rate_sfcar(snr, edge, grid, threads);
  r.mi = mi_rate_sfcar(snr, edge, grid, threads);
  const double kli2 = kli_rate_sfcar(snr, edge, 2 * grid, threads);
  const double mi2 = mi_rate_sfcar(snr, edge, 2 * grid, threads);
  r.quad_error_estimate = std::max(std::abs(r.kli - kli2), std::abs(r.mi - mi2));
  return r;
}

double stein_kli(double snr) {
  if (!(snr >= 0.0)) throw DomainError("SNR must be non-negative");
  return kernels::rate_term(RateKind::kli, snr);
}

LowSnrConstants low_snr_constants(double zeta, std::size_t grid) {
  if (!(zeta >= 0.0) || zeta > 0.2499) {
    throw DomainError("low-SNR constants need zeta in [0, 0.2499]");
  }
  check_grid(grid);
  const auto edge = EdgeDependence::from_zeta(zeta);
  const FoldedAxis axis = folded_axis(grid);
  double inv1 = 0.0;
  double inv2 = 0.0;
  for (std::size_t a = 0; a < axis.s.size(); ++a) {
    for (std::size_t b = 0; b < axis.s.size(); ++b) {
      const double den = 4.0 * edge.gap() + 4.0 * zeta * (axis.s[a] + axis.s[b]);
      const double w = axis.w[a] * axis.w[b];
      inv1 += w / den;
      inv2 += w / (den * den);
    }
  }
  // Grid sums to integrals over [-pi, pi)^2.
  const double cell = std::pow(2.0 * std::numbers::pi / static_cast<double>(grid), 2);
  inv1 *= cell;
  inv2 *= cell;
  const double k = 0.5 * std::numbers::pi * edge.power_factor();
  return {inv2 / (64.0 * k * k), inv1 / (16.0 * std::numbers::pi * k)};
}

OptimalZeta optimal_zeta(double snr, int coarse, double refine_tol, std::size_t grid,
                         unsigned threads) {
  if (!(snr > 0.0)) throw DomainError("optimal_zeta needs a positive SNR");
  if (coarse < 101) throw DomainError("optimal_zeta needs at least 101 coarse points");
  const auto objective = [&](double z) {
    return kli_rate_sfcar(snr, EdgeDependence::from_zeta(std::clamp(z, 0.0, 0.25)), grid, threads);
  };

  const double step = 0.25 / (coarse - 1);
  int best = 0;
  double best_value = objective(0.0);
  for (int i = 1; i < coarse; ++i) {
    const double v = objective(i * step);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  const double lo = std::max(0, best - 1) * step;
  const double hi = std::min(coarse - 1, best + 1) * step;
  Maximum m = golden_section_max(objective, lo, hi, refine_tol);

  // Golden section never lands exactly on a bracket end or the coarse
  // point; a maximum sitting on one is recovered here.
  OptimalZeta out{m.x, m.value};
  for (double end : {hi, best * step, lo}) {
    const double v = objective(end);
    if (v >= out.kli_star && (v > out.kli_star || end < out.zeta_star)) out = {end, v};
  }
  return out;
}

}  // namespace gmrfinfo
