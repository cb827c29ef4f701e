#pragma once

// Quadrature kernels shared by the special-function, test-function and
// correlation modules.

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"

namespace eqlab::quad {

template <class V>
struct Result {
  V value{};
  double abs_error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
  double a, b;
  V value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

// 15-point Kronrod rule with embedded 7-point Gauss error estimate.
template <class V, class F>
Panel<V> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const V fc = f(c);
  V k = fc * kWgk[7];
  V g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const V f1 = f(c - dx), f2 = f(c + dx);
    k += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) g += (f1 + f2) * kWg[j / 2];
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace detail

struct AdaptiveOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  std::size_t max_panels = 20000;
  std::size_t initial_panels = 1;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// V may be double or std::complex<double>. The reported error is the sum of
/// the per-panel |K15 - G7| estimates. Throws AccuracyError when the panel
/// budget is exhausted before the tolerance is met.
template <class V, class F>
Result<V> integrate(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  std::priority_queue<detail::Panel<V>> heap;
  const std::size_t n0 = std::max<std::size_t>(1, opt.initial_panels);
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
    heap.push(detail::gk15<V>(f, lo, hi));
  }
  std::size_t evals = 15 * n0;
  auto totals = [&heap] {
    // Priority queues are not iterable; copy is cheap relative to integrand work.
    auto copy = heap;
    CompensatedSum<V> v;
    double e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().err;
      copy.pop();
    }
    return std::pair<V, double>{v.value(), e};
  };
  double err_sum = 0.0;
  V running{};
  {
    auto [v, e] = totals();
    running = v;
    err_sum = e;
  }
  while (true) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(running));
    if (err_sum <= tol) break;
    if (heap.size() >= opt.max_panels)
      throw AccuracyError("adaptive quadrature: panel budget exhausted (error " +
                          std::to_string(err_sum) + ", tolerance " + std::to_string(tol) + ")");
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15<V>(f, worst.a, mid);
    auto right = detail::gk15<V>(f, mid, worst.b);
    evals += 30;
    running += left.value + right.value - worst.value;
    err_sum += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 256 == 0) {
      auto [v, e] = totals();  // refresh to shed accumulated rounding
      running = v;
      err_sum = e;
    }
  }
  auto [v, e] = totals();
  return {v, e, evals};
}

/// Tanh-sinh (double-exponential) rule on [a, b], halving the step until two
/// successive levels agree. Suited to integrands that are smooth inside the
/// interval but flat or singular at the endpoints.
template <class F>
Result<double> tanh_sinh(F&& f, double a, double b, double tol = 1e-14, int max_level = 12) {
  const double h2 = 0.5 * (b - a);
  if (h2 == 0.0) return {};
  constexpr double kTmax = 3.2;
  // Abscissae are placed by their distance to the nearer endpoint so that
  // nodes crowding the ends never collapse onto them in floating point.
  auto eval_at = [&](double t) {
    const double s = 0.5 * kPi * std::sinh(t);
    const double ch = std::cosh(s);
    const double w = 0.5 * kPi * std::cosh(t) / (ch * ch);
    if (t == 0.0) return w * f(a + h2);
    const double dist = 2.0 * h2 / (std::exp(2.0 * std::abs(s)) + 1.0);
    return w * f(t > 0 ? b - dist : a + dist);
  };
  double h = 1.0;
  CompensatedSum<double> acc;
  acc += eval_at(0.0);
  for (double t = h; t <= kTmax; t += h) {
    acc += eval_at(t);
    acc += eval_at(-t);
  }
  double prev = acc.value() * h * h2;
  std::size_t evals = 1 + 2 * static_cast<std::size_t>(kTmax / h);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTmax; t += 2 * h) {
      acc += eval_at(t);
      acc += eval_at(-t);
      evals += 2;
    }
    const double cur = acc.value() * h * h2;
    const double diff = std::abs(cur - prev);
    if (level >= 3 && diff <= tol * std::max(1.0, std::abs(cur)))
      return {cur, diff, evals};
    prev = cur;
  }
  throw AccuracyError("tanh-sinh quadrature did not converge");
}

}  // namespace eqlab::quad
