#include <cmath>

#include "gmrfinfo/kernels.hpp"

namespace gmrfinfo::kernels {

namespace {

double rate_sum(RateKind kind, std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += rate_term(kind, v);
  return acc;
}

double sfcar_row_sum(RateKind kind, std::span<const double> s, std::span<const double> w,
                     double base, double slope, double scale) {
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    acc += w[j] * rate_term(kind, scale / (base + slope * s[j]));
  }
  return acc;
}

double log_sum(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += std::log(v);
  return acc;
}

double weighted_norm_sum(std::span<const std::complex<double>> z, std::span<const double> c) {
  double acc = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) acc += std::norm(z[j]) * c[j];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &rate_sum, &sfcar_row_sum, &log_sum,
                                 &weighted_norm_sum};
  return table;
}

}  // namespace gmrfinfo::kernels
