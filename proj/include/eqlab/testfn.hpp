#pragma once

// Bump test functions psi(y) = psi0((y - center) / width) with
// psi0(x) = exp(-1 / (1 - 4 x^2)) on (-1/2, 1/2), and their Mellin transforms
// psi~(s) = int psi(y) y^s dy/y.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/quadrature.hpp"

namespace eqlab::testfn {

// sup |psi0^{(j)}| for j = 0..3, measured once at 30 digits.
inline constexpr std::array<double, 4> kDerivSup = {0.36787944117144233, 1.5968595036671991,
                                                    30.998819766776582, 1491.1993705506264};
// int psi0, int psi0^2, int psi0'^2 over (-1/2, 1/2).
inline constexpr double kBaseIntegral = 0.22199690808403972;
inline constexpr double kBaseSquareIntegral = 0.066543060422497136;
inline constexpr double kBaseDerivSquareIntegral = 0.81917412150554026;

/// j-th derivative of psi0 (j <= 3).
inline double psi0(double x, int j = 0) {
  if (!(std::abs(x) < 0.5)) return 0.0;
  const double q = 1.0 - 4.0 * x * x;
  const double p = std::exp(-1.0 / q);
  if (j == 0) return p;
  const double g1 = -8.0 * x / (q * q);
  if (j == 1) return p * g1;
  const double g2 = (-8.0 * q - 128.0 * x * x) / (q * q * q);
  if (j == 2) return p * (g1 * g1 + g2);
  const double g3 = (-384.0 * x * q - 3072.0 * x * x * x) / (q * q * q * q);
  if (j == 3) return p * (g1 * g1 * g1 + 3.0 * g1 * g2 + g3);
  throw DomainError("psi0: derivative order must be <= 3");
}

struct BumpFunction {
  double center = 2.0;
  double width = 0.5;
  double A = 2.0;  // 1 / width

  double lo() const { return center - 0.5 * width; }
  double hi() const { return center + 0.5 * width; }
  double operator()(double y) const { return psi0((y - center) / width); }
  double derivative(double y, int j) const { return psi0((y - center) / width, j) * std::pow(A, j); }
};

inline BumpFunction make_bump(double center, double width) {
  if (!(width > 0.0) || !(center - 0.5 * width > 0.0))
    throw DomainError("make_bump: support must lie in (0, inf)");
  return BumpFunction{center, width, 1.0 / width};
}

inline std::int64_t bump_family_size(double T, double delta) {
  return static_cast<std::int64_t>(std::ceil(std::pow(T, delta)));
}

/// psi_{T,j}(y) = psi0((y - (1 + j T^{-delta})) / T^{-delta}).
inline BumpFunction bump_family(double T, double delta, std::int64_t j) {
  if (!(delta >= 0.0 && delta < 1.0 / 51.0)) throw DomainError("bump_family: delta must lie in [0, 1/51)");
  if (!(T >= 1.0)) throw DomainError("bump_family: T must be >= 1");
  if (j < 1 || j > bump_family_size(T, delta)) throw RangeError("bump_family: j outside [1, ceil(T^delta)]");
  const double w = std::pow(T, -delta);
  return make_bump(1.0 + static_cast<double>(j) * w, w);
}

namespace detail {
template <class V, class F>
quad::Result<V> over_support(const BumpFunction& psi, F&& f, double rel_tol, std::size_t panels = 8,
                             double abs_tol = 1e-300) {
  quad::AdaptiveOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  o.initial_panels = panels;
  o.max_panels = 200000;
  return quad::integrate<V>(f, psi.lo(), psi.hi(), o);
}
}  // namespace detail

struct PsiNorms {
  double l1_sq = 0.0;     // int psi^2 dy/y
  double l2 = 0.0;        // (int psi^2 dy/y)^{1/2}
  double deriv_sq = 0.0;  // int psi'^2 dy/y
};

inline PsiNorms psi_norms(const BumpFunction& psi) {
  PsiNorms n;
  n.l1_sq = detail::over_support<double>(psi, [&](double y) { const double v = psi(y); return v * v / y; }, 1e-12).value;
  n.l2 = std::sqrt(n.l1_sq);
  n.deriv_sq = detail::over_support<double>(psi, [&](double y) { const double v = psi.derivative(y, 1); return v * v / y; }, 1e-12).value;
  return n;
}

/// Bound on int psi(y) |y^{s-1}| dy.
inline double support_mass(const BumpFunction& psi, double re_s) {
  return psi.width * kBaseIntegral * std::max(std::pow(psi.lo(), re_s - 1.0), std::pow(psi.hi(), re_s - 1.0));
}

/// psi~(s) = int psi(y) y^{s-1} dy, for -3 < Re s < 3. Absolute error target
/// 1e-13 times the support mass.
inline cplx psi_mellin(const BumpFunction& psi, cplx s) {
  if (!(s.real() > -3.0 && s.real() < 3.0)) throw DomainError("psi_mellin: need -3 < Re s < 3");
  const double phase = std::abs(s.imag()) * std::log(psi.hi() / psi.lo());
  const auto panels = static_cast<std::size_t>(8 + phase / 2.0);
  auto f = [&](double y) { return psi(y) * std::exp((s - 1.0) * std::log(y)); };
  return detail::over_support<cplx>(psi, f, 1e-13, panels, 1e-13 * support_mass(psi, s.real())).value;
}

/// C with |psi~(sigma + it)| <= C (1 + |t|/A)^{-3} for all t. Integrating by
/// parts three times gives |psi~(s)| <= min(M0, M3 / |t|^3) with
/// M0 = int psi y^{sigma-1} dy and M3 = int |psi'''| y^{sigma+2} dy, and
/// (1 + |t|/A)^3 <= 8 max(1, |t|/A)^3.
inline double mellin_decay_constant(const BumpFunction& psi, double sigma) {
  const double m0 =
      detail::over_support<double>(psi, [&](double y) { return psi(y) * std::pow(y, sigma - 1.0); }, 1e-10).value;
  const double m3 = detail::over_support<double>(
                        psi, [&](double y) { return std::abs(psi.derivative(y, 3)) * std::pow(y, sigma + 2.0); },
                        1e-10, 64)
                        .value;
  return 8.0 * std::max(m0, m3 / std::pow(psi.A, 3)) * (1.0 + 1e-9);
}

/// Fixed-node evaluator of psi~ on many points. Uses composite 15-point
/// Kronrod rules in x = log y; `max_imag` is the largest |Im s| to be requested
/// and sets the panel count. Accuracy is checked against psi_mellin in tests.
class MellinSampler {
 public:
  MellinSampler(const BumpFunction& psi, double max_imag) : psi_(psi) {
    const double xa = std::log(psi.lo()), xb = std::log(psi.hi());
    const double L = xb - xa;
    const auto panels = static_cast<std::size_t>(std::ceil(std::max(64.0, max_imag * L / 3.0)));
    const auto& xk = quad::detail::kXgk;
    const auto& wk = quad::detail::kWgk;
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = xa + L * static_cast<double>(p) / static_cast<double>(panels);
      const double b = xa + L * static_cast<double>(p + 1) / static_cast<double>(panels);
      const double c = 0.5 * (a + b), h = 0.5 * (b - a);
      for (std::size_t k = 0; k < xk.size(); ++k) {
        const int signs = (k == xk.size() - 1) ? 1 : 2;
        for (int sg = 0; sg < signs; ++sg) {
          const double x = (sg == 0) ? c - h * xk[k] : c + h * xk[k];
          const double wv = h * wk[k] * psi(std::exp(x));
          if (wv != 0.0) {
            x_.push_back(x);
            w_.push_back(wv);
          }
        }
      }
    }
  }

  cplx operator()(cplx s) const {
    CompensatedSum<cplx> acc;
    for (std::size_t i = 0; i < x_.size(); ++i) acc += w_[i] * std::exp(s * x_[i]);
    return acc.value();
  }

  /// psi~(sigma + i (v0 + j h)) for j = 0..count-1. Each node's phase factor
  /// is advanced by multiplication and recomputed exactly every 64 steps.
  std::vector<cplx> line(double sigma, double v0, double h, std::size_t count, unsigned threads = 1) const {
    std::vector<cplx> out(count);
    constexpr std::size_t kBlock = 64;
    const std::size_t nblocks = (count + kBlock - 1) / kBlock;
    parallel_for(nblocks, threads, [&](std::size_t b) {
      const std::size_t j0 = b * kBlock, j1 = std::min(count, j0 + kBlock);
      std::vector<cplx> acc(j1 - j0);
      for (std::size_t i = 0; i < x_.size(); ++i) {
        const double x = x_[i];
        cplx ph = w_[i] * std::exp(cplx(sigma, v0 + static_cast<double>(j0) * h) * x);
        const cplx step = std::polar(1.0, h * x);
        for (std::size_t j = j0; j < j1; ++j) {
          acc[j - j0] += ph;
          ph *= step;
        }
      }
      for (std::size_t j = j0; j < j1; ++j) out[j] = acc[j - j0];
    });
    return out;
  }

  /// Nodes x = log y and weights w * psi(y) of the underlying rule.
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& weights() const { return w_; }

 private:
  BumpFunction psi_;
  std::vector<double> x_, w_;
};

/// Smallest v (on a grid of step 4) beyond which |psi~(sigma + i v')| stays
/// below rel * |psi~(sigma)| for all sampled v' in [v, v + 200 / width + 400].
inline double mellin_decay_cutoff(const BumpFunction& psi, double sigma, double rel) {
  const double look = 200.0 / psi.width + 400.0;
  const double ref = std::abs(psi_mellin(psi, cplx(sigma, 0.0)));
  double v = 0.0;
  for (;;) {
    MellinSampler ms(psi, v + look + 10.0);
    double last_big = -1.0;
    for (double w = v; w <= v + look; w += 4.0)
      if (std::abs(ms(cplx(sigma, w))) > rel * ref) last_big = w;
    if (last_big < 0.0) return v;
    v = last_big + 4.0;
    if (v > 1e6) throw ConvergenceError("mellin_decay_cutoff: no decay found");
  }
}

}  // namespace eqlab::testfn
