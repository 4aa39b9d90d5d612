#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gmrfinfo/kernels.hpp"

using namespace gmrfinfo::kernels;

namespace {

// Long-double reference; for small |x| the KLI term comes from its power
// series in x, 1/2 sum_{k>=2} (-1)^k (k-1)/k x^k.
long double phi(RateKind k, double x) {
  const long double lx = x;
  const long double mi = 0.5L * std::log1p(lx);
  if (k == RateKind::mi) return mi;
  if (std::abs(x) >= 1e-3) return mi - 0.5L * lx / (1 + lx);
  long double sum = 0, p = -lx;
  for (int j = 2; j < 12; ++j) {
    p *= -lx;
    sum += p * (j - 1) / j;
  }
  return 0.5L * sum;
}

// Values spread over many decades, with tiny arguments where log1p matters.
std::vector<double> spread(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> e(-14.0, 12.0);
  std::vector<double> v(n);
  for (auto& x : v) x = std::pow(10.0, e(rng));
  return v;
}

double naive_rate(RateKind k, const std::vector<double>& x) {
  long double s = 0;
  for (double v : x) s += phi(k, v);
  return static_cast<double>(s);
}

std::vector<const KernelTable*> tables() {
  std::vector<const KernelTable*> t{&scalar_table()};
  if (const KernelTable* a = avx2_table()) t.push_back(a);
  return t;
}

}  // namespace

TEST_CASE("kernel selection") {
  const auto& a = active();
  CHECK((a.name == "scalar" || a.name == "avx2"));
  CHECK(scalar_table().name == "scalar");
  if (avx2_table() != nullptr) MESSAGE("AVX2 variant available and tested");
}

TEST_CASE("rate sums against a long-double reference") {
  for (const KernelTable* t : tables()) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 1000u}) {
      const auto x = spread(n, n);
      for (RateKind k : {RateKind::kli, RateKind::mi}) {
        const double ref = naive_rate(k, x);
        CAPTURE(t->name);
        CAPTURE(n);
        CHECK(t->rate_sum(k, x) == doctest::Approx(ref).epsilon(1e-13));
      }
    }
    // Arguments near -1 stay valid.
    const std::vector<double> near{-0.999999, -0.5, 1e-300, 0.0};
    CHECK(t->rate_sum(RateKind::mi, near) == doctest::Approx(naive_rate(RateKind::mi, near)).epsilon(1e-14));
  }
}

TEST_CASE("KLI term keeps its relative accuracy at small arguments") {
  const std::vector<double> xs{1e-150, 1e-15, 3e-9, -2e-6, 1e-4, -0.05, 0.1, 0.1428, 0.1429, 0.3, 2.0};
  CHECK(rate_term(RateKind::kli, 0.0) == 0.0);
  for (const KernelTable* t : tables()) {
    for (double x : xs) {
      CAPTURE(t->name);
      CAPTURE(x);
      const double ref = static_cast<double>(phi(RateKind::kli, x));
      CHECK(rate_term(RateKind::kli, x) == doctest::Approx(ref).epsilon(2e-15).scale(0.0));
      // Four lanes take the vector path.
      const std::vector<double> four(4, x);
      CHECK(t->rate_sum(RateKind::kli, four) == doctest::Approx(4 * ref).epsilon(2e-15).scale(0.0));
    }
  }
}

TEST_CASE("scalar and vector variants agree") {
  const KernelTable* v = avx2_table();
  if (v == nullptr) return;
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n : {1u, 2u, 4u, 6u, 9u, 129u, 257u, 4099u}) {
    CAPTURE(n);
    std::vector<double> sv(n), w(n), a(n);
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      sv[i] = u(rng);
      w[i] = (i == 0 || i + 1 == n) ? 1.0 : 2.0;
      a[i] = std::exp(40 * (u(rng) - 0.5));
      z[i] = {u(rng) - 0.5, u(rng) - 0.5};
    }
    const auto x = spread(n, 100 + n);
    for (RateKind k : {RateKind::kli, RateKind::mi}) {
      CHECK(v->rate_sum(k, x) == doctest::Approx(s.rate_sum(k, x)).epsilon(1e-13));
      for (double base : {1e-9, 0.02, 0.9}) {
        for (double scale : {1e-6, 1.0, 1e4}) {
          CHECK(v->sfcar_row_sum(k, sv, w, base, 0.96, scale) ==
                doctest::Approx(s.sfcar_row_sum(k, sv, w, base, 0.96, scale)).epsilon(1e-13));
        }
      }
    }
    CHECK(v->log_sum(a) == doctest::Approx(s.log_sum(a)).epsilon(1e-13).scale(1.0));
    CHECK(v->weighted_norm_sum(z, a) == doctest::Approx(s.weighted_norm_sum(z, a)).epsilon(1e-13));
  }
}

TEST_CASE("row sum and log sum against direct formulas") {
  for (const KernelTable* t : tables()) {
    const std::vector<double> sv{0.0, 0.25, 0.5, 1.0, 0.75}, w{1, 2, 2, 1, 2};
    long double ref = 0;
    for (std::size_t i = 0; i < sv.size(); ++i) ref += w[i] * phi(RateKind::kli, 3.0 / (0.1 + 0.9 * sv[i]));
    CHECK(t->sfcar_row_sum(RateKind::kli, sv, w, 0.1, 0.9, 3.0) == doctest::Approx(double(ref)).epsilon(1e-14));
    const std::vector<double> a{1e-200, 3.0, 7e150, 0.5, 2.0};
    long double l = 0;
    for (double v : a) l += std::log(v);
    CHECK(t->log_sum(a) == doctest::Approx(double(l)).epsilon(1e-14));
    const std::vector<std::complex<double>> z{{1, 2}, {0.5, -1}, {3, 0}};
    const std::vector<double> c{0.5, 2, -1};
    CHECK(t->weighted_norm_sum(z, c) == doctest::Approx(2.5 + 2.5 - 9.0));
  }
}
