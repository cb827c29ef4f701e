#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"

namespace eqlab::specfun {

// Distance below which gamma/zeta arguments count as sitting on a pole.
inline constexpr double kPoleProximity = 1e-8;

namespace detail {

// B_{2k} / (2k (2k-1)) for k = 1..12.
inline constexpr std::array<double, 12> kStirlingCoeff = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0};

inline cplx stirling_log_gamma(cplx s) {
  static const double half_log_2pi = 0.5 * std::log(2.0 * kPi);
  cplx result = (s - 0.5) * std::log(s) - s + half_log_2pi;
  const cplx inv = 1.0 / s;
  const cplx inv2 = inv * inv;
  cplx p = inv;
  for (double c : kStirlingCoeff) {
    const cplx term = c * p;
    result += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(result))) break;
    p *= inv2;
  }
  return result;
}

}  // namespace detail

/// log Gamma(s) on the branch continuous from the positive real axis (the
/// convention of mpmath.loggamma / scipy.special.loggamma). Arguments are shifted
/// upward until |s| >= 10 with Re s >= 0, then a Stirling series is applied.
inline cplx log_gamma(cplx s) {
  if (s.real() <= 0.5) {
    const double k = std::round(s.real());
    if (k <= 0.0 && std::abs(s - cplx(k, 0.0)) < kPoleProximity)
      throw PoleError("log_gamma: argument at a pole of Gamma");
  }
  CompensatedSum<cplx> shift;
  while (s.real() < 0.0 || std::abs(s) < 10.0) {
    shift += std::log(s);
    s += 1.0;
  }
  return detail::stirling_log_gamma(s) - shift.value();
}

inline cplx gamma(cplx s) { return std::exp(log_gamma(s)); }

}  // namespace eqlab::specfun
