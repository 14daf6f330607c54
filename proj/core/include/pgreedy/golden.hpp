#pragma once

#include <cmath>

namespace pgreedy {

struct GoldenResult {
  double argmin = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `tolerance`.
template <class F>
GoldenResult golden_section_minimize(F&& fn, double lo, double hi, double tolerance, int max_iterations = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  int it = 0;
  for (; it < max_iterations && (b - a) > tolerance; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  GoldenResult result;
  result.argmin = 0.5 * (a + b);
  result.value = fn(result.argmin);
  // The bracket endpoints' interior probes can beat the midpoint by rounding.
  if (fc < result.value) {
    result.argmin = c;
    result.value = fc;
  }
  if (fd < result.value) {
    result.argmin = d;
    result.value = fd;
  }
  result.iterations = it;
  return result;
}

}  // namespace pgreedy
