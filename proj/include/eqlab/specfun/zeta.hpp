#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/specfun/gamma.hpp"

namespace eqlab::specfun {

namespace detail {

// B_{2k} / (2k)! for k = 1..12.
inline constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0};

// log of sin(z), stable for large |Im z| where sin itself overflows.
inline cplx log_sin(cplx z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(z));
  const cplx i(0.0, 1.0);
  // sin z = (e^{iz} - e^{-iz}) / (2i)
  if (z.imag() > 0.0) return -i * z + std::log(-(1.0 - std::exp(2.0 * i * z)) / (2.0 * i));
  return i * z + std::log((1.0 - std::exp(-2.0 * i * z)) / (2.0 * i));
}

}  // namespace detail

/// Euler-Maclaurin evaluation of zeta(s), valid for any s != 1. Uses
/// N = max(20, ceil|Im s|) direct terms and up to twelve Bernoulli corrections.
inline cplx zeta_euler_maclaurin(cplx s) {
  if (std::abs(s - 1.0) < kPoleProximity) throw PoleError("zeta: pole at s = 1");
  const int n = std::max(20, static_cast<int>(std::ceil(std::abs(s.imag()))) +
                                 static_cast<int>(std::ceil(std::max(0.0, -s.real()))));
  CompensatedSum<cplx> acc;
  for (int k = 1; k < n; ++k) acc += std::exp(-s * std::log(static_cast<double>(k)));
  const double logn = std::log(static_cast<double>(n));
  const cplx n_pow = std::exp(-s * logn);  // N^{-s}
  acc += n_pow * static_cast<double>(n) / (s - 1.0);
  acc += 0.5 * n_pow;
  // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
  cplx rising = s;                             // s (s+1) ... (s+2k-2)
  cplx npow = n_pow / static_cast<double>(n);  // N^{-s-2k+1} at k = 1
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t k = 1; k <= detail::kBernoulliOverFactorial.size(); ++k) {
    const cplx term = detail::kBernoulliOverFactorial[k - 1] * rising * npow;
    acc += term;
    if (std::abs(term) < 1e-17 * std::abs(acc.value())) break;
    const double j = 2.0 * static_cast<double>(k);
    rising *= (s + j - 1.0) * (s + j);
    npow *= inv_n2;
  }
  return acc.value();
}

/// log of the functional-equation factor chi(s) in zeta(s) = chi(s) zeta(1-s),
/// chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s).
inline cplx log_zeta_chi(cplx s) {
  return s * std::log(2.0) + (s - 1.0) * std::log(kPi) + detail::log_sin(0.5 * kPi * s) +
         log_gamma(1.0 - s);
}

/// Riemann zeta. Euler-Maclaurin on Re s >= 1/2; the functional equation
/// continues it to Re s < 1/2.
inline cplx zeta(cplx s) {
  if (std::abs(s - 1.0) < kPoleProximity) throw PoleError("zeta: pole at s = 1");
  if (s.real() >= 0.5) return zeta_euler_maclaurin(s);
  const double k = std::round(s.real() / 2.0);
  if (k < 0.0 && std::abs(s - cplx(2.0 * k, 0.0)) < kPoleProximity) return 0.0;  // trivial zeros
  return std::exp(log_zeta_chi(s)) * zeta_euler_maclaurin(1.0 - s);
}

}  // namespace eqlab::specfun
