#pragma once

// E*_T(iy) on the imaginary axis from its Fourier expansion at x = 0:
//   E*_T(iy) = mu y^{1/2+iT} + conj(mu) y^{1/2-iT}
//            + 2 rho*(1) sum_n tau_{iT}(n) n^{-1/2} V_T(2 pi n y),
// with V_T(u) = sqrt(u) K_{iT}(u). The kernel is tabulated once per T.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "eqlab/arith.hpp"
#include "eqlab/chebyshev.hpp"
#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/specfun.hpp"

namespace eqlab::eisen {

/// e^{pi T/2} K_{iT}(u) on [u_lo, u_hi] as a piecewise Chebyshev table built
/// from certified kernel values. Beyond the point where the Debye exponent
/// drops below -700 the table returns 0.
class ScaledBesselTable {
 public:
  ScaledBesselTable(double T, double u_lo, double u_hi, unsigned threads = 1) : T_(T) {
    if (!(u_lo > 0.0) || !(u_hi > u_lo)) throw DomainError("ScaledBesselTable: bad range");
    u_zero_ = u_hi;
    if (u_hi > T + 1.0) {
      // Smallest u with Debye exponent below -700 (the exponent decreases in u > T).
      double lo = std::max(u_lo, T + 1.0), hi = u_hi;
      if (debye_exponent(hi) < -700.0) {
        if (debye_exponent(lo) < -700.0) {
          hi = lo;
        } else {
          for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (lo + hi);
            (debye_exponent(m) < -700.0 ? hi : lo) = m;
          }
        }
        u_zero_ = hi;
      }
    }
    const double top = std::min(u_hi, u_zero_);
    std::vector<double> breaks{u_lo};
    double u = u_lo;
    const double airy = std::cbrt(std::max(T, 1.0));
    while (u < top) {
      // About 14 radians of phase (or e-foldings) per piece.
      const double rate = std::sqrt(std::abs(u * u - T * T)) / u + 1.0 / airy;
      u = std::min(top, u + 14.0 / rate);
      if (top - u < 1e-9 * top) u = top;
      breaks.push_back(u);
    }
    std::atomic<double> kernel_err{0.0};
    auto f = [&](double x) {
      auto v = specfun::scaled_bessel_k(T, x, kKernelTol);
      double cur = kernel_err.load();
      while (v.abs_error_bound > cur && !kernel_err.compare_exchange_weak(cur, v.abs_error_bound)) {
      }
      return v.value;
    };
    PiecewiseChebyshev::Options opt;
    opt.abs_tol = 2e-12;
    opt.threads = threads;
    cheb_ = PiecewiseChebyshev::fit(f, breaks, opt);
    // Interpolation amplifies node errors by the Lebesgue constant (< 4 for 36 nodes).
    abs_error_bound_ = 4.0 * kernel_err.load() + cheb_.max_tail();
    u_hi_ = u_hi;
  }

  double T() const { return T_; }
  double u_lo() const { return cheb_.lo(); }
  double u_hi() const { return u_hi_; }
  std::size_t pieces() const { return cheb_.pieces(); }
  double abs_error_bound() const { return abs_error_bound_; }

  double operator()(double u) const {
    if (u > u_zero_ && u <= u_hi_) return 0.0;
    return cheb_(u);
  }

 private:
  static constexpr double kKernelTol = 1e-11;

  double debye_exponent(double u) const {
    return T_ * std::acos(T_ / u) - std::sqrt((u - T_) * (u + T_));
  }

  double T_;
  double u_hi_ = 0.0;
  double u_zero_ = 0.0;
  double abs_error_bound_ = 0.0;
  PiecewiseChebyshev cheb_;
};

/// Truncation index ceil((T + 12 T^{1/3} + 40) / (2 pi y_lo)).
inline std::int64_t truncation_index(double T, double y_lo) {
  return static_cast<std::int64_t>(std::ceil((T + 12.0 * std::cbrt(T) + 40.0) / (2.0 * kPi * y_lo)));
}

/// Bound on sum_{n > n_max} 2 rho*(1) |tau(n)| n^{-1/2} |V_T(2 pi n y)| for
/// y >= y_lo, using |tau(n)| <= d(n) <= 2 sqrt(n) and
/// e^{pi T/2} K_{iT}(u) <= 1.5 x (leading Debye term) for u >= T + 12 T^{1/3}.
/// The terms decay faster than geometrically, so the sum is bounded by the
/// first term over (1 - r) with r the ratio of the first two terms.
inline double series_tail_bound(double T, double rho_scaled, std::int64_t n_max, double y_lo) {
  auto term = [&](double n) {
    const double u = 2.0 * kPi * n * y_lo;
    return 2.0 * rho_scaled * 2.0 * std::sqrt(u) * 1.5 * specfun::scaled_bessel_k_debye(T, u);
  };
  const double n1 = static_cast<double>(n_max + 1);
  if (2.0 * kPi * n1 * y_lo < T + 12.0 * std::cbrt(T))
    throw RegimeError("series_tail_bound: truncation point is not in the monotone regime");
  const double t1 = term(n1), t2 = term(n1 + 1.0);
  const double r = (t1 > 0.0) ? t2 / t1 : 0.0;
  if (!(r < 1.0)) throw RegimeError("series_tail_bound: tail is not decreasing");
  return t1 / (1.0 - r);
}

class EisensteinSeries {
 public:
  double T = 0.0;
  specfun::EisensteinConstants constants;
  arith::DivisorCoefficientTable tau;
  std::int64_t n_max = 0;
  double tail_bound = 0.0;
  double y_lo = 0.9;
  double y_hi = 3.4;
  std::shared_ptr<const ScaledBesselTable> kernel;

  /// E*_T(iy). Throws WindowError outside [y_lo, y_hi].
  double operator()(double y) const {
    if (!(y >= y_lo && y <= y_hi)) throw WindowError("EisensteinSeries: y outside window");
    const double phase = std::arg(constants.mu) + T * std::log(y);
    const double constant_term = std::cos(phase);
    const double u1 = 2.0 * kPi * y;
    double s = 0.0;
    const auto& K = *kernel;
    for (std::int64_t n = 1; n <= n_max; ++n) s += tau[n] * K(u1 * static_cast<double>(n));
    return 2.0 * std::sqrt(y) * (constant_term + std::sqrt(2.0 * kPi) * constants.rho_star_1_scaled * s);
  }

  /// Absolute error bound of operator() at y: series tail plus tabulated
  /// kernel error plus rounding in the phase T log y.
  double abs_error_bound(double y) const {
    double dsum = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) dsum += std::abs(tau[n]);
    return tail_bound + 2.0 * std::sqrt(y) *
                            (std::sqrt(2.0 * kPi) * constants.rho_star_1_scaled * dsum * kernel->abs_error_bound() +
                             4e-16 * (T * std::abs(std::log(y)) + 10.0));
  }
};

struct SeriesOptions {
  double y_lo = 0.9;
  double y_hi = 3.4;
  std::optional<std::int64_t> n_max;  // defaults to truncation_index(T, y_lo)
  unsigned threads = 1;
};

inline EisensteinSeries build_series(double T, const SeriesOptions& opt = {}) {
  if (!(T >= 10.0)) throw DomainError("build_series: T must be >= 10");
  if (!(opt.y_lo > 0.0) || !(opt.y_hi > opt.y_lo)) throw DomainError("build_series: bad window");
  EisensteinSeries s;
  s.T = T;
  s.y_lo = opt.y_lo;
  s.y_hi = opt.y_hi;
  const std::int64_t rule = truncation_index(T, opt.y_lo);
  s.n_max = opt.n_max.value_or(rule);
  if (s.n_max < rule) throw DomainError("build_series: n_max below the truncation rule");
  if (s.n_max > arith::kMaxTableSize) throw CapacityError("build_series: n_max exceeds table guard");
  s.constants = specfun::eisenstein_constants(T);
  s.tau = arith::build_tau_table(T, s.n_max, opt.threads);
  s.tail_bound = series_tail_bound(T, s.constants.rho_star_1_scaled, s.n_max, opt.y_lo);
  // Padded so that u = (2 pi y) n at the window edges stays inside after rounding.
  s.kernel = std::make_shared<ScaledBesselTable>(T, 2.0 * kPi * opt.y_lo * (1.0 - 1e-12),
                                                 2.0 * kPi * static_cast<double>(s.n_max) * opt.y_hi * (1.0 + 1e-12),
                                                 opt.threads);
  return s;
}

struct SignChangeReport {
  double T = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::int64_t count = 0;
  std::vector<double> zeros;
  std::int64_t grid_points = 0;
  double min_gap = 0.0;  // smallest distance between consecutive zeros (0 if fewer than 2)
  // Grid points where |f| fell below the noise threshold; a double zero or a
  // pair of close zeros may have been missed there.
  std::vector<double> near_tangencies;
  bool suspicious = false;
};

struct SignChangeOptions {
  std::int64_t grid_points = 0;  // 0: max(4096, ceil(64 T (b - a)))
  double noise = 0.0;            // |f| below 10 (noise + 1e-12) flags a grid point
  unsigned threads = 1;
};

inline std::int64_t default_grid_points(double T, double a, double b) {
  return std::max<std::int64_t>(4096, static_cast<std::int64_t>(std::ceil(64.0 * T * (b - a))));
}

/// Counts sign changes of f on [a, b] using a grid uniform in log y, with
/// each bracket refined by bisection to width <= 1e-12.
template <class F>
SignChangeReport count_sign_changes(F&& f, double T, double a, double b, const SignChangeOptions& opt = {}) {
  if (!(a > 0.0) || !(b > a)) throw DomainError("count_sign_changes: need 0 < a < b");
  SignChangeReport rep;
  rep.T = T;
  rep.a = a;
  rep.b = b;
  const std::int64_t N = opt.grid_points > 0 ? opt.grid_points : default_grid_points(T, a, b);
  if (N < 2) throw DomainError("count_sign_changes: need at least 2 grid points");
  rep.grid_points = N;
  const double la = std::log(a), lb = std::log(b);
  std::vector<double> ys(static_cast<std::size_t>(N)), fs(static_cast<std::size_t>(N));
  for (std::int64_t i = 0; i < N; ++i) {
    const double y = (i == 0) ? a : (i == N - 1) ? b : std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(N - 1));
    ys[static_cast<std::size_t>(i)] = y;
  }
  const std::size_t chunk = 256;
  const std::size_t nchunks = (ys.size() + chunk - 1) / chunk;
  parallel_for(nchunks, opt.threads, [&](std::size_t c) {
    const std::size_t end = std::min(ys.size(), (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) fs[i] = f(ys[i]);
  });

  const double thresh = 10.0 * (opt.noise + 1e-12);
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (std::abs(fs[i]) < thresh) rep.near_tangencies.push_back(ys[i]);
  rep.suspicious = !rep.near_tangencies.empty();

  // Brackets between consecutive nonzero samples of opposite sign.
  std::vector<std::pair<std::size_t, std::size_t>> brackets;
  std::size_t last = fs.size();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i] == 0.0) continue;
    if (last != fs.size() && (fs[last] > 0.0) != (fs[i] > 0.0)) brackets.push_back({last, i});
    last = i;
  }
  std::vector<double> zeros(brackets.size());
  parallel_for(brackets.size(), opt.threads, [&](std::size_t k) {
    auto [i, j] = brackets[k];
    double lo = ys[i], hi = ys[j];
    const bool lo_positive = fs[i] > 0.0;
    if (j > i + 1) {
      // An exact zero sits on the grid between them.
      for (std::size_t m = i + 1; m < j; ++m)
        if (fs[m] == 0.0) {
          zeros[k] = ys[m];
          return;
        }
    }
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      ((fm > 0.0) == lo_positive ? lo : hi) = mid;
    }
    zeros[k] = 0.5 * (lo + hi);
  });
  for (double z : zeros) {
    if (!rep.zeros.empty() && z - rep.zeros.back() < 1e-11) continue;
    if (z > a && z < b) rep.zeros.push_back(z);
  }
  rep.count = static_cast<std::int64_t>(rep.zeros.size());
  rep.min_gap = 0.0;
  for (std::size_t k = 1; k < rep.zeros.size(); ++k) {
    const double g = rep.zeros[k] - rep.zeros[k - 1];
    rep.min_gap = (k == 1) ? g : std::min(rep.min_gap, g);
  }
  return rep;
}

inline SignChangeReport count_sign_changes(const EisensteinSeries& s, double a, double b,
                                           const SignChangeOptions& opt = {}) {
  if (!(a >= s.y_lo && b <= s.y_hi)) throw WindowError("count_sign_changes: interval outside series window");
  auto o = opt;
  o.noise = std::max(o.noise, s.abs_error_bound(b));
  return count_sign_changes([&](double y) { return s(y); }, s.T, a, b, o);
}

}  // namespace eqlab::eisen
