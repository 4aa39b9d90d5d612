#pragma once

#include <cstddef>
#include <span>

namespace gmrfinfo {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope x. Needs two distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Log-log OLS restricted to the asymptotic end of a sweep: the smallest
/// quarter of the x values is dropped, and so is anything more than a
/// decade below the largest x. Points with non-positive x or y are skipped.
LinearFit fit_loglog_tail(std::span<const double> x, std::span<const double> y);

}  // namespace gmrfinfo
