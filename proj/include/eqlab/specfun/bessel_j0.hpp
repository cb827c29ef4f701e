#pragma once

#include <cmath>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"

namespace eqlab::specfun {

namespace detail {

inline double j0_series(double x) {
  const double q = -0.25 * x * x;
  CompensatedSum<double> acc;
  double term = 1.0;
  acc += term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    acc += term;
    if (std::abs(term) < 1e-18) break;
  }
  return acc.value();
}

// J0(x) = (1/pi) int_0^pi cos(x sin t) dt. The integrand is periodic and
// entire, so the trapezoid rule converges geometrically once the node count
// exceeds x.
inline double j0_trapezoid(double x) {
  const int n = static_cast<int>(x) + 64;
  CompensatedSum<double> acc;
  for (int k = 0; k < n; ++k) acc += std::cos(x * std::sin(kPi * (k + 0.5) / n));
  return acc.value() / n;
}

// Hankel asymptotic expansion; truncated at the smallest term.
inline double j0_asymptotic(double x) {
  double p = 1.0, q = 0.0;
  double term = 1.0;
  const double inv8x = 1.0 / (8.0 * x);
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd * inv8x / k;
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      case 0: p += term; break;
    }
    if (std::abs(term) < 1e-18) break;
  }
  // J0 ~ sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - pi/4.
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

/// Bessel J0 for |alpha| <= 100 with absolute error below 1e-12. Power series
/// up to 12, periodic trapezoid on (12, 20), Hankel expansion beyond.
inline double bessel_j0(double alpha) {
  const double x = std::abs(alpha);
  if (!(x <= 100.0)) throw DomainError("bessel_j0: |alpha| must not exceed 100");
  if (x <= 12.0) return detail::j0_series(x);
  if (x < 20.0) return detail::j0_trapezoid(x);
  return detail::j0_asymptotic(x);
}

}  // namespace eqlab::specfun
