#pragma once

// Normalization constants of E*_T and the Mellin transforms of V_T, V_T^2.
// Everything that carries e^{-pi T/2} decay also has a scaled form.

#include <cmath>
#include <complex>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/specfun/gamma.hpp"
#include "eqlab/specfun/zeta.hpp"

namespace eqlab::specfun {

struct EisensteinConstants {
  double T = 0.0;
  cplx theta_half;          // theta(1/2 + iT); underflows to 0 for T beyond ~450
  cplx theta_half_scaled;   // e^{pi T/2} theta(1/2 + iT)
  double log_abs_theta = 0.0;
  cplx mu;                  // theta(1/2+iT) / |theta(1/2+iT)|
  double rho_star_1 = 0.0;         // (2/pi)^{1/2} / |theta(1/2+iT)|; may overflow
  double rho_star_1_scaled = 0.0;  // e^{-pi T/2} rho*(1)
  double log_rho_star_1 = 0.0;
  cplx zeta_1_plus_2iT;
};

/// log theta(s) for theta(s) = pi^{-s} Gamma(s) zeta(2s).
inline cplx log_theta(cplx s) {
  return -s * std::log(kPi) + log_gamma(s) + std::log(zeta(2.0 * s));
}

inline EisensteinConstants eisenstein_constants(double T) {
  if (!(T >= 1.0)) throw DomainError("eisenstein_constants: T must be >= 1");
  EisensteinConstants c;
  c.T = T;
  c.zeta_1_plus_2iT = zeta(cplx(1.0, 2.0 * T));
  const cplx s(0.5, T);
  const cplx lt = -s * std::log(kPi) + log_gamma(s) + std::log(c.zeta_1_plus_2iT);
  c.log_abs_theta = lt.real();
  c.mu = std::polar(1.0, lt.imag());
  c.theta_half = std::exp(lt);
  c.theta_half_scaled = std::exp(lt + 0.5 * kPi * T);
  c.log_rho_star_1 = 0.5 * std::log(2.0 / kPi) - c.log_abs_theta;
  c.rho_star_1 = std::exp(c.log_rho_star_1);
  c.rho_star_1_scaled = std::exp(c.log_rho_star_1 - 0.5 * kPi * T);
  return c;
}

namespace detail {
inline cplx log_gamma_VT(double T, cplx s) {
  const cplx a = 0.5 + s;
  return -1.5 * std::log(2.0) - s * std::log(kPi) + log_gamma(0.5 * (a + cplx(0.0, T))) +
         log_gamma(0.5 * (a - cplx(0.0, T)));
}
inline cplx log_gamma_VT_squared(double T, cplx s) {
  const cplx a = 1.0 + s;
  return -2.0 * std::log(2.0) - s * std::log(kPi) + log_gamma(0.5 * (a + cplx(0.0, 2.0 * T))) +
         2.0 * log_gamma(0.5 * a) + log_gamma(0.5 * (a - cplx(0.0, 2.0 * T))) - log_gamma(a);
}
}  // namespace detail

/// gamma_{V_T}(1/2 + s) = int_0^inf V_T(2 pi y) y^s dy/y
///                      = 2^{-3/2} pi^{-s} Gamma((1/2+s+iT)/2) Gamma((1/2+s-iT)/2).
inline cplx gamma_VT(double T, cplx s) { return std::exp(detail::log_gamma_VT(T, s)); }

/// e^{pi T/2} gamma_{V_T}(1/2 + s).
inline cplx gamma_VT_scaled(double T, cplx s) {
  return std::exp(detail::log_gamma_VT(T, s) + 0.5 * kPi * T);
}

/// gamma_{V_T^2}(1 + s) = int_0^inf V_T(2 pi y)^2 y^s dy/y.
inline cplx gamma_VT_squared(double T, cplx s) {
  return std::exp(detail::log_gamma_VT_squared(T, s));
}

/// e^{pi T} gamma_{V_T^2}(1 + s).
inline cplx gamma_VT_squared_scaled(double T, cplx s) {
  return std::exp(detail::log_gamma_VT_squared(T, s) + kPi * T);
}

}  // namespace eqlab::specfun
