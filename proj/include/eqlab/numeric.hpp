#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace eqlab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Neumaier-compensated accumulator. Works for double and std::complex<double>.
template <class V>
class CompensatedSum {
 public:
  void add(V x) {
    if constexpr (std::is_same_v<V, double>) {
      add_real(sum_, comp_, x);
    } else {
      double sr = sum_.real(), cr = comp_.real();
      double si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = V(sr, si);
      comp_ = V(cr, ci);
    }
  }
  CompensatedSum& operator+=(V x) {
    add(x);
    return *this;
  }
  V value() const { return sum_ + comp_; }

 private:
  static void add_real(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  V sum_{};
  V comp_{};
};

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once and results must be written to disjoint slots, so
/// the outcome does not depend on the thread count.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first;
  std::mutex m;
  std::atomic<bool> stop{false};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n && !stop.load(std::memory_order_relaxed); i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!first) first = std::current_exception();
        stop = true;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

/// Deterministic parallel reduction of f(0) + ... + f(n-1). The partition into
/// fixed-size chunks and the order in which chunk sums are combined are
/// independent of `threads`, so results are bit-identical for any thread count.
template <class V, class F>
V chunked_sum(std::size_t n, unsigned threads, F&& f, std::size_t chunk = 2048) {
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<V> partial(nchunks, V{});
  parallel_for(nchunks, threads, [&](std::size_t c) {
    CompensatedSum<V> acc;
    const std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) acc += f(i);
    partial[c] = acc.value();
  });
  CompensatedSum<V> total;
  for (const auto& p : partial) total += p;
  return total.value();
}

}  // namespace eqlab
