#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "eqlab/arith.hpp"

using namespace eqlab;
using namespace eqlab::arith;

TEST(TauTable, SmallValues) {
  const double T = 17.3;
  const auto tab = build_tau_table(T, 100);
  EXPECT_EQ(tab[1], 1.0);
  EXPECT_NEAR(tab[2], 2.0 * std::cos(T * std::log(2.0)), 1e-14);
  EXPECT_NEAR(tab[12], tab[4] * tab[3], 1e-12);
  double brute = 0.0;
  for (std::int64_t a : {1, 2, 3, 4, 6, 12}) brute += std::cos(T * std::log(static_cast<double>(a * a) / 12.0));
  EXPECT_NEAR(tab[12], brute, 1e-12);
}

TEST(TauTable, SieveMatchesDirect) {
  const double T = 123.456;
  const auto tab = build_tau_table(T, 10000);
  for (std::int64_t n = 1; n <= 10000; ++n) ASSERT_NEAR(tab[n], tau_direct(T, n), 1e-10) << n;
}

TEST(TauTable, DivisorBoundAndMultiplicativity) {
  const double T = 987.6;
  const std::int64_t N = 20000;
  const auto tab = build_tau_table(T, N);
  const auto d = divisor_count_table(N);
  for (std::int64_t n = 1; n <= N; n += 7) EXPECT_LE(std::abs(tab[n]), d[n] + 1e-12) << n;
  for (std::int64_t m = 2; m < 140; m += 3)
    for (std::int64_t n = 2; n < 140; n += 5)
      if (std::gcd(m, n) == 1) {
        EXPECT_NEAR(tab[m * n], tab[m] * tab[n], 1e-10) << m << " " << n;
      }
}

TEST(TauTable, HeckeRelation) {
  const double T = 250.0;
  const auto tab = build_tau_table(T, 100 * 100);
  for (std::int64_t p = 2; p < 100; ++p) {
    bool prime = true;
    for (std::int64_t q = 2; q * q <= p; ++q) prime = prime && (p % q != 0);
    if (prime) {
      EXPECT_NEAR(tab[p] * tab[p], tab[p * p] + 1.0, 1e-10) << p;
    }
  }
}

TEST(TauTable, ZeroTIsDivisorCount) {
  const auto tab = build_tau_table(0.0, 5000);
  const auto d = divisor_count_table(5000);
  for (std::int64_t n = 1; n <= 5000; ++n) ASSERT_NEAR(tab[n], d[n], 1e-12);
}

TEST(TauTable, DeterministicAcrossThreads) {
  const auto a = build_tau_table(701.5, 300000, 1);
  const auto b = build_tau_table(701.5, 300000, 1);
  const auto c = build_tau_table(701.5, 300000, 4);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values, c.values);
}

TEST(TauTable, Errors) {
  EXPECT_THROW(build_tau_table(1.0, kMaxTableSize + 1), CapacityError);
  EXPECT_THROW(build_tau_table(1.0, 0), DomainError);
  const auto tab = build_tau_table(1.0, 10);
  EXPECT_THROW(tab[0], RangeError);
  EXPECT_THROW(tab[11], RangeError);
}

TEST(SigmaMinusOne, Values) {
  EXPECT_EQ(sigma_minus_one(1), 1.0);
  EXPECT_NEAR(sigma_minus_one(6), 2.0, 1e-15);
  EXPECT_NEAR(sigma_minus_one(-4), 1.75, 1e-15);
  EXPECT_THROW(sigma_minus_one(0), DomainError);
}

TEST(Divisors, Enumeration) {
  EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(1), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(divisor_count(36), 9);
}

TEST(ZIdentity, SpecCases) {
  const auto a = check_Z_identity(5.0, 3.0, 100000);
  EXPECT_LE(a.residual, a.tail_bound);
  const auto b = check_Z_identity(0.0, 4.0, 1000);
  EXPECT_LE(b.residual, 1e-6);
  const auto c = check_Z_identity(20.0, 2.5, 1000000);
  EXPECT_LE(c.residual, 2.0 * c.tail_bound);
  EXPECT_THROW(check_Z_identity(5.0, 1.9, 1000), ConvergenceError);
  EXPECT_THROW(check_Z_identity(5.0, 3.0, 999), DomainError);
}

TEST(ZIdentity, TailBoundDominatesActualTail) {
  // Exact tail between N and 10^6 must sit below the bound for the tail beyond N.
  const std::int64_t M = 1000000;
  const auto d = divisor_count_table(M);
  for (std::int64_t N : {1000, 10000, 100000}) {
    double tail = 0.0;
    for (std::int64_t n = M; n > N; --n) tail += double(d[n]) * d[n] * std::pow(double(n), -2.5);
    EXPECT_LE(tail, divisor_square_tail_bound(N, 2.5)) << N;
  }
}

TEST(TauCache, RoundTripAndKeyMismatch) {
  const auto path = (std::filesystem::temp_directory_path() / "eqlab_tau_cache_test.bin").string();
  std::filesystem::remove(path);
  const auto built = cached_tau_table(33.0, 5000, path);
  ASSERT_TRUE(std::filesystem::exists(path));
  const auto loaded = load_tau_table(path, 33.0, 5000);
  EXPECT_EQ(built.values, loaded.values);
  EXPECT_THROW(load_tau_table(path, 34.0, 5000), Error);
  EXPECT_THROW(load_tau_table(path, 33.0, 4000), Error);
  std::filesystem::resize_file(path, 100);
  EXPECT_THROW(load_tau_table(path, 33.0, 5000), Error);
  std::filesystem::remove(path);
}
