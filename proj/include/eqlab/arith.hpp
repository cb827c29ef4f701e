#pragma once

// Divisor-type coefficients: tau_{iT}(n), sigma_{-1}(m), and the Rankin-Selberg
// series Z(s, E_T) = sum tau_{iT}(n)^2 n^{-s}.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"
#include "eqlab/specfun/zeta.hpp"

namespace eqlab::arith {

inline constexpr std::int64_t kMaxTableSize = 100'000'000;

/// tau_{iT}(n) = sum_{ab=n} (a/b)^{iT} for 1 <= n <= n_max. Entry 0 is unused.
struct DivisorCoefficientTable {
  double T = 0.0;
  std::int64_t n_max = 0;
  std::vector<double> values;

  double operator[](std::int64_t n) const {
    if (n < 1 || n > n_max) throw RangeError("tau table index " + std::to_string(n) + " outside [1, n_max]");
    return values[static_cast<std::size_t>(n)];
  }
};

/// Sieve over unordered pairs a <= b with ab <= n_max; the pair (a, b) and its
/// mirror contribute 2 cos(T (log a - log b)).
///
/// The phase is formed as T * (log a - log b) with both logs correctly rounded
/// to within one ulp, so its absolute error is at most about
/// T * 2^-52 * (log a + log b + 1) <= T * 2^-52 * (log n_max + 1), i.e. ~1e-11
/// at T = 2000, n_max = 1e8.
///
/// Output indices are split into contiguous blocks handled by separate workers
/// and each entry accumulates its pairs in increasing a, so the result is
/// bit-identical for any thread count.
inline DivisorCoefficientTable build_tau_table(double T, std::int64_t n_max, unsigned threads = 1) {
  if (n_max < 1) throw DomainError("build_tau_table: n_max must be >= 1");
  if (n_max > kMaxTableSize) throw CapacityError("build_tau_table: n_max exceeds 1e8");
  DivisorCoefficientTable tab;
  tab.T = T;
  tab.n_max = n_max;
  tab.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n_max)));
  while ((root + 1) * (root + 1) <= n_max) ++root;
  while (root * root > n_max) --root;
  std::vector<double> log_a(static_cast<std::size_t>(root) + 1, 0.0);
  for (std::int64_t a = 1; a <= root; ++a) log_a[a] = std::log(static_cast<double>(a));

  const std::int64_t block = 1 << 16;
  const std::size_t nblocks = static_cast<std::size_t>((n_max + block) / block);
  parallel_for(nblocks, threads, [&](std::size_t bi) {
    const std::int64_t lo = static_cast<std::int64_t>(bi) * block;
    const std::int64_t hi = std::min<std::int64_t>(lo + block - 1, n_max);
    for (std::int64_t a = 1; a <= root; ++a) {
      const std::int64_t aa = a * a;
      if (aa > hi) break;
      // Multiples n = a*b in [max(lo, a*a), hi].
      std::int64_t b = std::max(a, (std::max<std::int64_t>(lo, 1) + a - 1) / a);
      for (; a * b <= hi; ++b) {
        const std::int64_t n = a * b;
        if (b == a) {
          tab.values[n] += 1.0;
        } else {
          tab.values[n] += 2.0 * std::cos(T * (log_a[a] - std::log(static_cast<double>(b))));
        }
      }
    }
  });
  return tab;
}

/// Direct divisor-pair summation, for cross-checking the sieve.
inline double tau_direct(double T, std::int64_t n) {
  if (n < 1) throw DomainError("tau_direct: n must be >= 1");
  double s = 0.0;
  for (std::int64_t a = 1; a * a <= n; ++a) {
    if (n % a) continue;
    const std::int64_t b = n / a;
    s += (a == b) ? 1.0
                  : 2.0 * std::cos(T * (std::log(static_cast<double>(a)) -
                                        std::log(static_cast<double>(b))));
  }
  return s;
}

inline std::int64_t divisor_count(std::int64_t n) {
  if (n < 1) throw DomainError("divisor_count: n must be >= 1");
  std::int64_t c = 0;
  for (std::int64_t a = 1; a * a <= n; ++a)
    if (n % a == 0) c += (a * a == n) ? 1 : 2;
  return c;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw DomainError("divisors: n must be >= 1");
  std::vector<std::int64_t> small, large;
  for (std::int64_t a = 1; a * a <= n; ++a) {
    if (n % a) continue;
    small.push_back(a);
    if (a * a != n) large.push_back(n / a);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// sigma_{-1}(m) = sum_{d | |m|} 1/d.
inline double sigma_minus_one(std::int64_t m) {
  if (m == 0) throw DomainError("sigma_minus_one: m must be nonzero");
  const std::int64_t n = m < 0 ? -m : m;
  CompensatedSum<double> s;
  for (auto d : divisors(n)) s += 1.0 / static_cast<double>(d);
  return s.value();
}

/// d(n) for 1 <= n <= n_max by sieve.
inline std::vector<std::int32_t> divisor_count_table(std::int64_t n_max) {
  if (n_max > kMaxTableSize) throw CapacityError("divisor_count_table: n_max exceeds 1e8");
  std::vector<std::int32_t> d(static_cast<std::size_t>(n_max) + 1, 0);
  for (std::int64_t a = 1; a <= n_max; ++a)
    for (std::int64_t n = a; n <= n_max; n += a) ++d[n];
  return d;
}

/// Upper bound for sum_{n > N} d(n)^2 n^{-sigma}, sigma > 1. Uses
/// D(x) = sum_{n <= x} d(n)^2 <= x (log x + 1)^3 and partial summation:
/// tail <= sigma * int_N^inf (log t + 1)^3 t^{-sigma} dt.
inline double divisor_square_tail_bound(std::int64_t N, double sigma) {
  if (!(sigma > 1.0)) throw ConvergenceError("divisor_square_tail_bound: sigma must exceed 1");
  const double k = sigma - 1.0;
  const double L = std::log(static_cast<double>(N)) + 1.0;
  const double poly = L * L * L / k + 3.0 * L * L / (k * k) + 6.0 * L / (k * k * k) + 6.0 / (k * k * k * k);
  return sigma * std::exp(-k * std::log(static_cast<double>(N))) * poly;
}

struct ZIdentityCheck {
  cplx truncated_sum;
  cplx zeta_product;
  double residual = 0.0;
  double tail_bound = 0.0;
};

/// Compares sum_{n <= n_trunc} tau_{iT}(n)^2 n^{-s} with
/// zeta(s - 2iT) zeta(s + 2iT) zeta(s)^2 / zeta(2s).
inline ZIdentityCheck check_Z_identity(double T, cplx s, std::int64_t n_trunc, unsigned threads = 1) {
  if (s.real() < 2.0) throw ConvergenceError("check_Z_identity: requires Re s >= 2");
  if (n_trunc < 1000) throw DomainError("check_Z_identity: n_trunc must be >= 1000");
  const auto tab = build_tau_table(T, n_trunc, threads);
  CompensatedSum<cplx> acc;
  // Smallest terms first.
  for (std::int64_t n = n_trunc; n >= 1; --n) {
    const double t = tab[n];
    acc += t * t * std::exp(-s * std::log(static_cast<double>(n)));
  }
  ZIdentityCheck out;
  out.truncated_sum = acc.value();
  const cplx i2T(0.0, 2.0 * T);
  const cplx zs = specfun::zeta(s);
  out.zeta_product = specfun::zeta(s - i2T) * specfun::zeta(s + i2T) * zs * zs / specfun::zeta(2.0 * s);
  out.residual = std::abs(out.truncated_sum - out.zeta_product);
  out.tail_bound = divisor_square_tail_bound(n_trunc, s.real());
  return out;
}

// Binary cache: magic, version, T, n_max, then n_max + 1 doubles.
inline constexpr char kTauCacheMagic[8] = {'E', 'Q', 'T', 'A', 'U', '\0', '\0', '\0'};
inline constexpr std::uint32_t kTauCacheVersion = 1;

inline void save_tau_table(const DivisorCoefficientTable& tab, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_tau_table: cannot open " + path);
  out.write(kTauCacheMagic, sizeof kTauCacheMagic);
  out.write(reinterpret_cast<const char*>(&kTauCacheVersion), sizeof kTauCacheVersion);
  out.write(reinterpret_cast<const char*>(&tab.T), sizeof tab.T);
  out.write(reinterpret_cast<const char*>(&tab.n_max), sizeof tab.n_max);
  out.write(reinterpret_cast<const char*>(tab.values.data()),
            static_cast<std::streamsize>(tab.values.size() * sizeof(double)));
  if (!out) throw Error("save_tau_table: write failed for " + path);
}

/// Loads a cached table. Throws if the file is missing, has a different
/// version, or was built for other (T, n_max).
inline DivisorCoefficientTable load_tau_table(const std::string& path, double T, std::int64_t n_max) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_tau_table: cannot open " + path);
  char magic[8];
  std::uint32_t version = 0;
  DivisorCoefficientTable tab;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&tab.T), sizeof tab.T);
  in.read(reinterpret_cast<char*>(&tab.n_max), sizeof tab.n_max);
  if (!in || std::memcmp(magic, kTauCacheMagic, sizeof magic) != 0 || version != kTauCacheVersion)
    throw Error("load_tau_table: bad header in " + path);
  if (tab.T != T || tab.n_max != n_max) throw Error("load_tau_table: key mismatch in " + path);
  tab.values.resize(static_cast<std::size_t>(n_max) + 1);
  in.read(reinterpret_cast<char*>(tab.values.data()),
          static_cast<std::streamsize>(tab.values.size() * sizeof(double)));
  if (!in) throw Error("load_tau_table: truncated file " + path);
  return tab;
}

/// Cached build: reuse `path` if it holds this (T, n_max), otherwise build and
/// write it.
inline DivisorCoefficientTable cached_tau_table(double T, std::int64_t n_max, const std::string& path,
                                                unsigned threads = 1) {
  try {
    return load_tau_table(path, T, n_max);
  } catch (const Error&) {
    auto tab = build_tau_table(T, n_max, threads);
    save_tau_table(tab, path);
    return tab;
  }
}

}  // namespace eqlab::arith
