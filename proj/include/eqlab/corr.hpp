#pragma once

// The correlation integral
//   I_{psi,alpha}(T) = int psi(y) psi(b y) E*_T(iy) E*_T(i b y) dy/y,  b = 1 + alpha/T,
// computed directly and through Parseval, (1/2 pi) int b^{-it} |F(it)|^2 dt with
// F(s) = int psi(y) E*_T(iy) y^s dy/y, plus the pieces of its asymptotic
// analysis: W_T(n,t), G(it), c_l and the J0 identity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "eqlab/arith.hpp"
#include "eqlab/eisen.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/quadrature.hpp"
#include "eqlab/specfun.hpp"
#include "eqlab/testfn.hpp"

namespace eqlab::corr {

using eisen::EisensteinSeries;
using testfn::BumpFunction;

/// 2 (3/pi) log(1/4 + T^2) J0(alpha) ||psi^2||_1.
inline double main_term(double T, double alpha, double l1_sq) {
  return 2.0 * (3.0 / kPi) * std::log(0.25 + T * T) * specfun::bessel_j0(alpha) * l1_sq;
}

struct QuadValue {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Direct quadrature of I_{psi,alpha}. With `swapped` the integral is taken in
/// the variable y' = b y, which exchanges the roles of the two factors.
inline QuadValue correlation_direct(const EisensteinSeries& s, double alpha, const BumpFunction& psi,
                                    bool swapped = false) {
  if (!(s.T >= 50.0)) throw DomainError("correlation_direct: T must be >= 50");
  const double b = 1.0 + alpha / s.T;
  if (!(b > 0.0)) throw DomainError("correlation_direct: 1 + alpha/T must be positive");
  // Support of psi(y) psi(b y).
  double lo = std::max(psi.lo(), psi.lo() / b), hi = std::min(psi.hi(), psi.hi() / b);
  if (swapped) {
    lo *= b;
    hi *= b;
  }
  if (!(hi > lo)) return {};
  const double ylo = swapped ? lo / b : lo, yhi = swapped ? hi / b : hi;
  if (!(std::min(ylo, b * ylo) >= s.y_lo && std::max(yhi, b * yhi) <= s.y_hi))
    throw WindowError("correlation_direct: support leaves the series window");
  auto f = [&](double y) {
    const double y1 = swapped ? y / b : y, y2 = swapped ? y : b * y;
    return psi(y1) * psi(y2) * s(y1) * s(y2) / y;
  };
  quad::AdaptiveOptions o;
  o.rel_tol = 1e-11;
  o.abs_tol = 1e-11;
  o.max_panels = 400000;
  o.initial_panels = static_cast<std::size_t>(std::ceil(64.0 * s.T * std::log(hi / lo) / 15.0)) + 1;
  auto r = quad::integrate<double>(f, lo, hi, o);
  // Propagated evaluation error of the two factors.
  const double e1 = s.abs_error_bound(s.y_hi);
  double emax = 0.0;
  for (int k = 0; k <= 16; ++k) {
    const double y = lo + (hi - lo) * k / 16.0;
    emax = std::max(emax, std::abs(s(swapped ? y / b : y)));
  }
  const double mass = psi.width * testfn::kBaseSquareIntegral / lo * 1.1;
  return {r.value, r.abs_error + 2.0 * e1 * (emax + e1) * mass};
}

enum class FRoute { direct, series };

namespace detail {

// Nodes of a fixed Mellin rule over the support with E* sampled on them.
struct DirectSampler {
  testfn::MellinSampler rule;
  std::vector<double> weights;  // w_i psi(y_i) E*(i y_i)
  DirectSampler(const EisensteinSeries& s, const BumpFunction& psi, double max_imag)
      : rule(psi, max_imag + s.T + 20.0) {
    const auto& x = rule.nodes();
    weights = rule.weights();
    for (std::size_t i = 0; i < x.size(); ++i) weights[i] *= s(std::exp(x[i]));
  }
  cplx operator()(cplx z) const {
    const auto& x = rule.nodes();
    CompensatedSum<cplx> acc;
    for (std::size_t i = 0; i < x.size(); ++i) acc += weights[i] * std::exp(z * x[i]);
    return acc.value();
  }
};

inline void check_support(const EisensteinSeries& s, const BumpFunction& psi) {
  if (!(psi.lo() >= s.y_lo && psi.hi() <= s.y_hi))
    throw WindowError("psi support leaves the series window");
}

// Half-width of the w-range outside which e^{pi T/2} gamma_{V_T}(1/2 + nu + iw)
// is below e^{-60} relative to its size on |w| < T.
inline double gamma_cutoff(double T) { return T + 40.0; }

// Dirichlet polynomial sum_{n <= N} tau(n) n^{-z}.
inline cplx dirichlet(const arith::DivisorCoefficientTable& tau, std::int64_t N, cplx z) {
  CompensatedSum<cplx> acc;
  for (std::int64_t n = N; n >= 1; --n) acc += tau[n] * std::exp(-z * std::log(static_cast<double>(n)));
  return acc.value();
}

}  // namespace detail

/// F(s) = int psi(y) E*_T(iy) y^s dy/y, either by quadrature against the
/// evaluated series or from the expansion
///   mu psi~(1/2+s+iT) + conj(mu) psi~(1/2+s-iT)
///   + 2 rho*(1) sum_n tau(n) n^{-1/2-s} (1/2 pi i) int_(nu) psi~(-u) n^{-u} gamma_{V_T}(1/2+s+u) du.
/// The inner contour is Re u = nu, discretized by the trapezoid rule with step
/// 1/64 and cut where the gamma factor is negligible. By default
/// nu = min(2.9, 1 - Re s).
inline cplx F_of_s(const EisensteinSeries& s, const BumpFunction& psi, cplx z, FRoute route,
                   std::optional<double> nu_opt = std::nullopt) {
  if (!(z.real() > -3.0 && z.real() < 3.0)) throw DomainError("F_of_s: need -3 < Re s < 3");
  detail::check_support(s, psi);
  if (route == FRoute::direct) {
    detail::DirectSampler ds(s, psi, std::abs(z.imag()));
    return ds(z);
  }
  const double nu = nu_opt.value_or(std::min(2.9, 1.0 - z.real()));
  if (!(nu + z.real() > 0.5)) throw ContourError("F_of_s: contour must satisfy nu + Re s > 1/2");
  if (!(nu > -3.0 && nu < 3.0)) throw ContourError("F_of_s: nu outside (-3, 3)");
  const double T = s.T;
  const double W = detail::gamma_cutoff(T);
  const double hv = 1.0 / 64.0;
  testfn::MellinSampler ms(psi, std::abs(z.imag()) + W + T + 2.0);
  const cplx iT(0.0, T);
  cplx out = s.constants.mu * ms(0.5 + z + iT) + std::conj(s.constants.mu) * ms(0.5 + z - iT);
  // v runs over the points with |Im z + v| <= W.
  const auto j_lo = static_cast<std::int64_t>(std::floor((-W - z.imag()) / hv));
  const auto j_hi = static_cast<std::int64_t>(std::ceil((W - z.imag()) / hv));
  CompensatedSum<cplx> acc;
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const cplx u(nu, static_cast<double>(j) * hv);
    const cplx shift = z + u;
    acc += ms(-u) * specfun::gamma_VT_scaled(T, shift) * detail::dirichlet(s.tau, s.n_max, 0.5 + shift);
  }
  out += 2.0 * s.constants.rho_star_1_scaled * (hv / (2.0 * kPi)) * acc.value();
  return out;
}

/// F(i k h) for k = -K..K, K h <= t_max, from the series expansion on the line
/// nu = 1. The inner contour uses step h/m <= 1/16 so that the inner sums for
/// all t share one table of gamma_{V_T} x Dirichlet-polynomial values.
struct FGrid {
  double T = 0.0;
  double h = 0.0;
  std::int64_t K = 0;
  std::vector<cplx> values;  // values[k + K] = F(i k h)
  cplx at(std::int64_t k) const { return values[static_cast<std::size_t>(k + K)]; }
};

/// max(T + 3 T^0.9, T + V) where |psi~(1/2 + iv)| < 1e-10 |psi~(1/2)| for
/// v > V. Beyond this range F(it) is of the size of psi~ at distance t - T
/// from the spectrum of E*_T.
inline double default_t_max(double T, const BumpFunction& psi) {
  return std::max(T + 3.0 * std::pow(T, 0.9), T + testfn::mellin_decay_cutoff(psi, 0.5, 1e-10));
}

inline FGrid compute_F_grid(const EisensteinSeries& s, const BumpFunction& psi, double h, double t_max,
                            unsigned threads = 1) {
  detail::check_support(s, psi);
  if (!(h > 0.0) || !(t_max > 0.0)) throw DomainError("compute_F_grid: bad grid");
  const double T = s.T;
  const double nu = 1.0;
  const auto m = static_cast<std::int64_t>(std::ceil(h * 16.0));
  const double hv = h / static_cast<double>(m);
  const double W = detail::gamma_cutoff(T);
  const auto Wn = static_cast<std::int64_t>(std::ceil(W / hv));
  FGrid g;
  g.T = T;
  g.h = h;
  g.K = static_cast<std::int64_t>(std::floor(t_max / h));
  const std::int64_t K = g.K;

  // H(w_i) = e^{pi T/2} gamma_{V_T}(1/2 + nu + i w_i) D(1/2 + nu + i w_i), |i| <= Wn.
  std::vector<cplx> H(static_cast<std::size_t>(2 * Wn + 1));
  std::vector<double> logn(static_cast<std::size_t>(s.n_max) + 1);
  for (std::int64_t n = 1; n <= s.n_max; ++n) logn[n] = std::log(static_cast<double>(n));
  parallel_for(H.size(), threads, [&](std::size_t idx) {
    const double w = static_cast<double>(static_cast<std::int64_t>(idx) - Wn) * hv;
    const cplx z(nu, w);
    CompensatedSum<cplx> d;
    for (std::int64_t n = s.n_max; n >= 1; --n)
      d += s.tau[n] * std::exp(-(0.5 + z) * logn[n]);
    H[idx] = specfun::gamma_VT_scaled(T, z) * d.value();
  });
  // psi~(-nu - i v_j) for v_j = j hv, j in [-Wn - K m, Wn + K m].
  const std::int64_t Vn = Wn + K * m;
  testfn::MellinSampler ms(psi, static_cast<double>(Vn) * hv + T + 2.0);
  // P[idx] = psi~(-nu - i v) with v = (idx - Vn) hv, i.e. Im = (Vn - idx) hv.
  const std::vector<cplx> P = ms.line(-nu, static_cast<double>(Vn) * hv, -hv,
                                      static_cast<std::size_t>(2 * Vn + 1), threads);
  const auto nt = static_cast<std::size_t>(2 * K + 1);
  const double t0 = -static_cast<double>(K) * h;
  const std::vector<cplx> plus = ms.line(0.5, t0 + T, h, nt, threads);
  const std::vector<cplx> minus = ms.line(0.5, t0 - T, h, nt, threads);
  g.values.assign(static_cast<std::size_t>(2 * K + 1), cplx{});
  const cplx mu = s.constants.mu;
  const double pref = 2.0 * s.constants.rho_star_1_scaled * hv / (2.0 * kPi);
  parallel_for(static_cast<std::size_t>(2 * K + 1), threads, [&](std::size_t idx) {
    const std::int64_t k = static_cast<std::int64_t>(idx) - K;
    // v = w - t, i.e. index j = i - k m.
    const cplx* p = &P[static_cast<std::size_t>(-Wn - k * m + Vn)];
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
      re += p[i].real() * H[i].real() - p[i].imag() * H[i].imag();
      im += p[i].real() * H[i].imag() + p[i].imag() * H[i].real();
    }
    g.values[idx] = mu * plus[idx] + std::conj(mu) * minus[idx] + pref * cplx(re, im);
  });
  return g;
}

struct ParsevalValue {
  double value = 0.0;
  double imag = 0.0;        // imaginary part of the complex t-sum
  double richardson = 0.0;  // |sum at step h - sum at step 2h|
};

/// (1/2 pi) sum_k h (1 + alpha/T)^{-i t_k} F(-i t_k) F(i t_k) over the grid.
inline ParsevalValue parseval_sum(const FGrid& g, double alpha) {
  const double lb = std::log1p(alpha / g.T);
  auto sum = [&](std::int64_t stride) {
    CompensatedSum<cplx> acc;
    for (std::int64_t k = -(g.K / stride) * stride; k <= g.K; k += stride) {
      const double t = static_cast<double>(k) * g.h;
      acc += std::polar(1.0, -t * lb) * g.at(-k) * g.at(k);
    }
    return acc.value() * (g.h * static_cast<double>(stride) / (2.0 * kPi));
  };
  const cplx full = sum(1), coarse = sum(2);
  return {full.real(), full.imag(), std::abs(full - coarse)};
}

inline double default_t_step(const BumpFunction& psi) { return std::min(0.25, 1.0 / (8.0 * psi.A)); }

inline QuadValue correlation_parseval(const EisensteinSeries& s, double alpha, const BumpFunction& psi,
                                      unsigned threads = 1) {
  if (!(s.T >= 50.0)) throw DomainError("correlation_parseval: T must be >= 50");
  auto g = compute_F_grid(s, psi, default_t_step(psi), default_t_max(s.T, psi), threads);
  auto p = parseval_sum(g, alpha);
  if (!(p.richardson <= 1e-8 * std::max(1.0, std::abs(p.value))))
    throw AccuracyError("correlation_parseval: trapezoid check failed");
  return {p.value, p.richardson + std::abs(p.imag)};
}

struct CorrelationReport {
  double T = 0.0;
  double alpha = 0.0;
  BumpFunction psi;
  double l1_sq = 0.0;
  double I_direct = 0.0;
  double I_parseval = 0.0;
  double main_term = 0.0;
  double deviation = 0.0;
  double route_gap = 0.0;
  double direct_error = 0.0;
  double parseval_error = 0.0;
};

/// Both routes. An F grid may be passed in to reuse it across alpha.
inline CorrelationReport correlation_report(const EisensteinSeries& s, double alpha, const BumpFunction& psi,
                                            const FGrid* grid = nullptr, unsigned threads = 1) {
  CorrelationReport r;
  r.T = s.T;
  r.alpha = alpha;
  r.psi = psi;
  r.l1_sq = testfn::psi_norms(psi).l1_sq;
  const auto d = correlation_direct(s, alpha, psi);
  r.I_direct = d.value;
  r.direct_error = d.abs_error;
  FGrid local;
  if (!grid) {
    local = compute_F_grid(s, psi, default_t_step(psi), default_t_max(s.T, psi), threads);
    grid = &local;
  }
  const auto p = parseval_sum(*grid, alpha);
  r.I_parseval = p.value;
  r.parseval_error = p.richardson + std::abs(p.imag);
  r.main_term = main_term(s.T, alpha, r.l1_sq);
  r.deviation = r.I_direct - r.main_term;
  r.route_gap = std::abs(r.I_direct - r.I_parseval);
  return r;
}

// ---------------------------------------------------------------------------
// Weight function and pointwise approximation of F.

inline double transition_width(double T) { return std::pow(T, 0.9); }

struct WeightValue {
  cplx W;
  double predictor = 0.0;  // psi(sqrt(T^2 - t^2) / (2 pi n))
};

/// W_T(n,t) = (1/2 pi i) int_(a) psi~(-u) n^{-u} gamma_{V_T}(1/2+it+u) / gamma_{V_T}(1/2+it) du
/// for any |t| < T. The asymptotic predictor is only meaningful away from the
/// transition range; weight_W enforces that.
inline WeightValue weight_integral(double T, const BumpFunction& psi, std::int64_t n, double t, double a = 1.0) {
  if (!(std::abs(t) < T)) throw RegimeError("weight_integral: need |t| < T");
  if (!(a > 0.5 && a < 1.5)) throw ContourError("weight_W: need 1/2 < a < 3/2");
  if (n < 1) throw DomainError("weight_W: n must be >= 1");
  // Aliasing of the trapezoid rule is of size e^{-(a - 1/2) 2 pi / hv}.
  const double hv = std::min(1.0 / 16.0, 2.0 * kPi * (a - 0.5) / 45.0);
  const double W = detail::gamma_cutoff(T);
  testfn::MellinSampler ms(psi, W + std::abs(t) + 2.0);
  const double ln = std::log(static_cast<double>(n));
  const cplx base = specfun::detail::log_gamma_VT(T, cplx(0.0, t));
  const auto j_lo = static_cast<std::int64_t>(std::floor((-W - t) / hv));
  const auto j_hi = static_cast<std::int64_t>(std::ceil((W - t) / hv));
  CompensatedSum<cplx> acc;
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const cplx u(a, static_cast<double>(j) * hv);
    acc += ms(-u) * std::exp(-u * ln + specfun::detail::log_gamma_VT(T, cplx(0.0, t) + u) - base);
  }
  WeightValue out;
  out.W = acc.value() * (hv / (2.0 * kPi));
  out.predictor = psi(std::sqrt(T * T - t * t) / (2.0 * kPi * static_cast<double>(n)));
  return out;
}

inline WeightValue weight_W(double T, const BumpFunction& psi, std::int64_t n, double t, double a = 1.0) {
  if (std::abs(t) > T - transition_width(T)) throw RegimeError("weight_W: need |t| <= T - T^0.9");
  return weight_integral(T, psi, n, t, a);
}

/// G(it) = 2 rho*(1) gamma_{V_T}(1/2+it) sum_n tau(n) n^{-1/2-it} psi(sqrt(T^2-t^2)/(2 pi n)).
inline cplx G_of_t(double T, const BumpFunction& psi, double t) {
  if (std::abs(t) > T - transition_width(T)) throw RegimeError("G_of_t: need |t| <= T - T^0.9");
  const auto c = specfun::eisenstein_constants(T);
  const double r = std::sqrt(T * T - t * t) / (2.0 * kPi);
  const auto n_lo = static_cast<std::int64_t>(std::ceil(r / psi.hi()));
  const auto n_hi = static_cast<std::int64_t>(std::floor(r / psi.lo()));
  CompensatedSum<cplx> acc;
  for (std::int64_t n = std::max<std::int64_t>(1, n_lo); n <= n_hi; ++n) {
    const double w = psi(r / static_cast<double>(n));
    if (w == 0.0) continue;
    acc += arith::tau_direct(T, n) * w * std::exp(-cplx(0.5, t) * std::log(static_cast<double>(n)));
  }
  return 2.0 * c.rho_star_1_scaled * specfun::gamma_VT_scaled(T, cplx(0.0, t)) * acc.value();
}

// ---------------------------------------------------------------------------
// Diagonal identities.

/// c_l = Gamma((1+l)/2) / (Gamma(1/2) Gamma(1 + l/2)) for even l, 0 for odd l.
inline double c_ell(int ell) {
  if (ell < 0) throw DomainError("c_ell: ell must be >= 0");
  if (ell % 2) return 0.0;
  const double l = ell;
  return std::exp((specfun::log_gamma(0.5 * (1.0 + l)) - specfun::log_gamma(0.5) -
                   specfun::log_gamma(1.0 + 0.5 * l)).real());
}

/// sum_{l <= L, l even} (-i alpha)^l / l! c_l.
inline double j0_partial_sum(double alpha, int L) {
  if (L < 0) throw DomainError("j0_partial_sum: L must be >= 0");
  CompensatedSum<double> acc;
  for (int l = 0; l <= L; l += 2) {
    if (alpha == 0.0) {
      acc += (l == 0) ? 1.0 : 0.0;
      continue;
    }
    const double mag = std::exp(l * std::log(std::abs(alpha)) - std::lgamma(l + 1.0)) * c_ell(l);
    acc += ((l / 2) % 2 ? -mag : mag);
  }
  return acc.value();
}

/// int_0^{pi/2} sin^l u du = (sqrt(pi)/2) Gamma((1+l)/2) / Gamma(1 + l/2).
inline double sin_power_integral(int ell) {
  if (ell < 0) throw DomainError("sin_power_integral: ell must be >= 0");
  const double l = ell;
  return 0.5 * std::sqrt(kPi) *
         std::exp((specfun::log_gamma(0.5 * (1.0 + l)) - specfun::log_gamma(1.0 + 0.5 * l)).real());
}

struct BinomialTail {
  double residual = 0.0;
  double bound = 0.0;  // 10^{-L} max_{|w| = 10|z|} |(1+w)^u|
};

/// |(1+z)^u - sum_{l <= L} binom(u, l) z^l| for |z| < 1/10, |u z| <= 8.
inline BinomialTail binomial_tail_check(cplx z, cplx u, int L) {
  if (!(std::abs(z) < 0.1) || !(std::abs(u * z) <= 8.0) || L < 0)
    throw DomainError("binomial_tail_check: need |z| < 1/10, |u z| <= 8, L >= 0");
  // log(1 + z) without cancellation for small z.
  const double x = z.real(), y = z.imag();
  const cplx log1pz(0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x));
  const cplx exact = std::exp(u * log1pz);
  CompensatedSum<cplx> acc;
  cplx term(1.0);
  for (int l = 0; l <= L; ++l) {
    acc += term;
    term *= (u - static_cast<double>(l)) * z / static_cast<double>(l + 1);
  }
  // Cauchy bound on |w| = 10|z|: |R_L| <= 10^{-L} max |(1+w)^u|.
  double log_max = 0.0;
  const double r = 10.0 * std::abs(z);
  for (int k = 0; k < 4096; ++k) {
    const cplx w = std::polar(r, 2.0 * kPi * k / 4096.0);
    log_max = std::max(log_max, (u * std::log(1.0 + w)).real());
  }
  return {std::abs(exact - acc.value()), std::exp(log_max - L * std::log(10.0)) * 1.01};
}

}  // namespace eqlab::corr
