// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "gmrfinfo/kernels.hpp"

namespace gmrfinfo::kernels::avx2 {

namespace {

// Natural log for positive, finite, normal lanes. Mantissa/exponent split
// followed by the Cephes rational approximation of log(1+m) on
// [sqrt(1/2)-1, sqrt(2)-1]; about one ulp.
inline __m256d log_pd(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256i mant_bits =
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                      _mm256_set1_epi64x(0x3FE0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);  // [0.5, 1)
  // int64 -> double for small non-negative values via the 2^52 trick.
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_set1_epi64x(0x4330000000000000LL))),
      _mm256_set1_pd(4503599627370496.0 + 1022.0));

  const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, one));
  m = _mm256_add_pd(m, _mm256_and_pd(small, m));
  m = _mm256_sub_pd(m, one);

  const __m256d z = _mm256_mul_pd(m, m);

  __m256d p = _mm256_set1_pd(1.01875663804580931796E-4);
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.97494994976747001425E-1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.70579119878881725854E0));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.44989225341610930846E1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.79368678507819816313E1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(7.70838733755885391666E0));

  __m256d q = _mm256_add_pd(m, _mm256_set1_pd(1.12873587189167450590E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(4.52279145837532221105E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(8.29875266912776603211E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(7.11544750618563894466E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(2.31251620126765340583E1));

  __m256d y = _mm256_mul_pd(m, _mm256_mul_pd(z, _mm256_div_pd(p, q)));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d r = _mm256_add_pd(m, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

// log(1+x) with the usual correction for the rounding of 1+x.
inline __m256d log1p_pd(__m256d x, __m256d u) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d corr = _mm256_div_pd(_mm256_sub_pd(_mm256_sub_pd(u, one), x), u);
  return _mm256_sub_pd(log_pd(u), corr);
}

inline __m256d phi_pd(RateKind kind, __m256d x) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d u = _mm256_add_pd(_mm256_set1_pd(1.0), x);
  const __m256d l = _mm256_mul_pd(half, log1p_pd(x, u));
  if (kind == RateKind::mi) return l;
  const __m256d y = _mm256_div_pd(x, u);
  const __m256d closed = _mm256_fnmadd_pd(half, y, l);
  __m256d p = _mm256_set1_pd(1.0 / kKliSeriesTerms);
  for (int k = kKliSeriesTerms - 1; k >= 2; --k) p = _mm256_fmadd_pd(p, y, _mm256_set1_pd(1.0 / k));
  const __m256d series = _mm256_mul_pd(_mm256_mul_pd(half, _mm256_mul_pd(y, y)), p);
  const __m256d abs_y = _mm256_andnot_pd(_mm256_set1_pd(-0.0), y);
  const __m256d near = _mm256_cmp_pd(abs_y, _mm256_set1_pd(kKliSeriesBound), _CMP_LT_OQ);
  return _mm256_blendv_pd(closed, series, near);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double rate_sum(RateKind kind, std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, phi_pd(kind, _mm256_loadu_pd(&x[j])));
  double tail = 0.0;
  for (; j < n; ++j) tail += rate_term(kind, x[j]);
  return hsum(acc) + tail;
}

double sfcar_row_sum(RateKind kind, std::span<const double> s, std::span<const double> w,
                     double base, double slope, double scale) {
  const std::size_t n = s.size();
  const __m256d vb = _mm256_set1_pd(base);
  const __m256d vs = _mm256_set1_pd(slope);
  const __m256d vc = _mm256_set1_pd(scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d den = _mm256_fmadd_pd(vs, _mm256_loadu_pd(&s[j]), vb);
    const __m256d x = _mm256_div_pd(vc, den);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(&w[j]), phi_pd(kind, x), acc);
  }
  double tail = 0.0;
  for (; j < n; ++j) tail += w[j] * rate_term(kind, scale / (base + slope * s[j]));
  return hsum(acc) + tail;
}

double log_sum(std::span<const double> a) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, log_pd(_mm256_loadu_pd(&a[j])));
  double tail = 0.0;
  for (; j < n; ++j) tail += std::log(a[j]);
  return hsum(acc) + tail;
}

double weighted_norm_sum(std::span<const std::complex<double>> z, std::span<const double> c) {
  const std::size_t n = z.size();
  const auto* zp = reinterpret_cast<const double*>(z.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    // [re0 im0 re1 im1] squared, paired with [c0 c0 c1 c1]
    const __m256d v = _mm256_loadu_pd(zp + 2 * j);
    const __m256d cw = _mm256_set_pd(c[j + 1], c[j + 1], c[j], c[j]);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), cw, acc);
  }
  double tail = 0.0;
  for (; j < n; ++j) tail += std::norm(z[j]) * c[j];
  return hsum(acc) + tail;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2", &rate_sum, &sfcar_row_sum, &log_sum, &weighted_norm_sum};
  return t;
}

}  // namespace gmrfinfo::kernels::avx2
