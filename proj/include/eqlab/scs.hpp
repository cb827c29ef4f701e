#pragma once

// Shifted divisor sums sum_n tau_{iT}(n) tau_{iT}(n+m) w(n) against the main
// term (|zeta(1+2iT)|^2 / zeta(2)) sigma_{-1}(m) sum_{+-} int (x+m)^{-+iT} x^{+-iT} w(x) dx.

#include <cmath>
#include <cstdint>
#include <vector>

#include "eqlab/arith.hpp"
#include "eqlab/chebyshev.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/quadrature.hpp"
#include "eqlab/specfun.hpp"
#include "eqlab/testfn.hpp"

namespace eqlab::scs {

inline constexpr double kTheta = 7.0 / 64.0;
inline constexpr double kMaxY = 1e7;

/// Smoothed step: 0 for u <= 0, 1 for u >= 1, the normalized antiderivative
/// of psi0(u - 1/2) in between.
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  static const PiecewiseChebyshev table = [] {
    auto F = [](double x) {
      if (x <= 0.0) return 0.0;
      quad::AdaptiveOptions o;
      o.abs_tol = 1e-16;
      o.rel_tol = 1e-15;
      return quad::integrate<double>([](double v) { return testfn::psi0(v - 0.5); }, 0.0, x, o).value /
             testfn::kBaseIntegral;
    };
    std::vector<double> breaks;
    for (int k = 0; k <= 16; ++k) breaks.push_back(k / 16.0);
    PiecewiseChebyshev::Options opt;
    opt.abs_tol = 1e-14;
    return PiecewiseChebyshev::fit(F, breaks, opt);
  }();
  return table(u);
}

struct ScsInstance {
  double T = 50.0;
  std::int64_t m = 1;
  double Y = 1e4;
  double P = 4.0;

  double R() const { return P + T * std::abs(static_cast<double>(m)) / Y; }
  /// w(x) = S((x - Y)/(Y/P)) S((2Y - x)/(Y/P)), supported on [Y, 2Y].
  double w(double x) const {
    const double s = Y / P;
    return smooth_step((x - Y) / s) * smooth_step((2.0 * Y - x) / s);
  }
};

inline void validate(const ScsInstance& in) {
  if (in.m == 0) throw DomainError("scs: m must be nonzero");
  if (!(in.P >= 1.0 && in.P <= in.Y)) throw DomainError("scs: need 1 <= P <= Y");
  if (!(in.T >= 1.0)) throw DomainError("scs: T must be >= 1");
  if (in.Y > kMaxY) throw CapacityError("scs: Y exceeds 1e7");
}

/// Largest index the tau table must cover.
inline std::int64_t required_table_size(const ScsInstance& in) {
  return static_cast<std::int64_t>(std::floor(2.0 * in.Y)) + std::abs(in.m) + 1;
}

/// sum_{n in Z} tau(n) tau(n+m) w(n), with tau(k) = tau(|k|) for k < 0. The
/// term with n + m = 0 is omitted (tau is not defined at 0).
inline double scs_brute(const ScsInstance& in, const arith::DivisorCoefficientTable& tau) {
  validate(in);
  if (tau.T != in.T) throw DomainError("scs_brute: table built for a different T");
  if (tau.n_max < required_table_size(in)) throw CapacityError("scs_brute: tau table too small");
  const auto n_lo = static_cast<std::int64_t>(std::ceil(in.Y));
  const auto n_hi = static_cast<std::int64_t>(std::floor(2.0 * in.Y));
  CompensatedSum<double> acc;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const std::int64_t k = n + in.m;
    if (k == 0) continue;
    const double wn = in.w(static_cast<double>(n));
    if (wn == 0.0) continue;
    acc += tau[n] * tau[k < 0 ? -k : k] * wn;
  }
  return acc.value();
}

/// Same sum with every tau computed from its divisor pairs.
inline double scs_naive(const ScsInstance& in) {
  validate(in);
  const auto n_lo = static_cast<std::int64_t>(std::ceil(in.Y));
  const auto n_hi = static_cast<std::int64_t>(std::floor(2.0 * in.Y));
  CompensatedSum<double> acc;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const std::int64_t k = n + in.m;
    if (k == 0) continue;
    const double wn = in.w(static_cast<double>(n));
    if (wn == 0.0) continue;
    acc += arith::tau_direct(in.T, n) * arith::tau_direct(in.T, k < 0 ? -k : k) * wn;
  }
  return acc.value();
}

/// int (x/(x+m))^{iT} w(x) dx over the support of w (x + m > 0 there).
inline cplx main_term_integral(const ScsInstance& in) {
  validate(in);
  const double a = std::max(in.Y, static_cast<double>(-in.m));
  const double b = 2.0 * in.Y;
  const double md = static_cast<double>(in.m);
  auto phase = [&](double x) { return -in.T * std::log1p(md / x); };
  // At least 40 nodes per oscillation.
  const double osc = std::abs(phase(a) - phase(b)) / (2.0 * kPi);
  quad::AdaptiveOptions o;
  o.rel_tol = 1e-13;
  o.abs_tol = 1e-13 * in.Y;
  o.initial_panels = static_cast<std::size_t>(std::ceil(40.0 * osc / 15.0)) + 8;
  o.max_panels = 200000;
  auto f = [&](double x) { return std::polar(in.w(x), phase(x)); };
  return quad::integrate<cplx>(f, a, b, o).value;
}

/// Main term; the two signs give complex conjugates.
inline double scs_main_term(const ScsInstance& in) {
  validate(in);
  const double z = std::abs(specfun::zeta(cplx(1.0, 2.0 * in.T)));
  const double zeta2 = kPi * kPi / 6.0;
  return 2.0 * (z * z / zeta2) * arith::sigma_minus_one(in.m) * main_term_integral(in).real();
}

/// |m|^theta T^{1/3} Y^{1/2} R^2 + T^{1/6} Y^{3/4} R^{1/2}.
inline double scs_error_bound(const ScsInstance& in) {
  const double R = in.R();
  return std::pow(std::abs(static_cast<double>(in.m)), kTheta) * std::cbrt(in.T) * std::sqrt(in.Y) * R * R +
         std::pow(in.T, 1.0 / 6.0) * std::pow(in.Y, 0.75) * std::sqrt(R);
}

/// M T^{1/3} Y^{1/2} R^2 + M T^{1/6} Y^{3/4} R^{1/2} with R = P + T M / Y.
inline double scs_summed_error_bound(double T, double Y, double P, std::int64_t M) {
  const double Md = static_cast<double>(M);
  const double R = P + T * Md / Y;
  return Md * std::cbrt(T) * std::sqrt(Y) * R * R + Md * std::pow(T, 1.0 / 6.0) * std::pow(Y, 0.75) * std::sqrt(R);
}

/// Value of R and the admissibility threshold 0.1 T / (T Y)^{0.01}.
inline double scs_condition_threshold(double T, double Y) { return 0.1 * T / std::pow(T * Y, 0.01); }

struct ScsReport {
  double T = 0.0;
  double Y = 0.0;
  double P = 0.0;
  std::int64_t m = 0;
  double brute = 0.0;
  double main_term = 0.0;
  double error = 0.0;
  double et_bound = 0.0;
  double ratio = 0.0;
  double R = 0.0;
  bool condition_ok = false;  // R <= 0.1 T / (T Y)^{0.01}
};

inline ScsReport scs_report(const ScsInstance& in, const arith::DivisorCoefficientTable& tau) {
  ScsReport r;
  r.T = in.T;
  r.Y = in.Y;
  r.P = in.P;
  r.m = in.m;
  r.brute = scs_brute(in, tau);
  r.main_term = scs_main_term(in);
  r.error = std::abs(r.brute - r.main_term);
  r.et_bound = scs_error_bound(in);
  r.ratio = r.error / r.et_bound;
  r.R = in.R();
  r.condition_ok = r.R <= scs_condition_threshold(in.T, in.Y);
  return r;
}

struct ScsSweep {
  std::vector<ScsReport> rows;
  double total_error = 0.0;
  double summed_bound = 0.0;  // for M = max |m|
};

inline ScsSweep scs_sweep(double T, double Y, double P, const std::vector<std::int64_t>& m_list,
                          unsigned threads = 1) {
  if (m_list.empty()) throw DomainError("scs_sweep: empty m list");
  std::int64_t M = 0;
  for (auto m : m_list) M = std::max<std::int64_t>(M, std::abs(m));
  ScsInstance probe{T, M, Y, P};
  validate(probe);
  const auto tau = arith::build_tau_table(T, required_table_size(probe), threads);
  ScsSweep out;
  out.rows.resize(m_list.size());
  parallel_for(m_list.size(), threads, [&](std::size_t i) {
    out.rows[i] = scs_report(ScsInstance{T, m_list[i], Y, P}, tau);
  });
  for (const auto& r : out.rows) out.total_error += r.error;
  out.summed_bound = scs_summed_error_bound(T, Y, P, M);
  return out;
}

}  // namespace eqlab::scs
