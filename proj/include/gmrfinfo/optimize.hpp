#pragma once

#include <cmath>
#include <utility>

namespace gmrfinfo {

struct Maximum {
  double x;
  double value;
};

/// Golden-section search for a maximum of a unimodal f on [a, b], stopping
/// once the bracket is narrower than tol.
template <class F>
Maximum golden_section_max(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
}

}  // namespace gmrfinfo
