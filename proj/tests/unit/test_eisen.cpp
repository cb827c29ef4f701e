#include <gtest/gtest.h>

#include <cmath>

#include "eqlab/eisen.hpp"

using namespace eqlab;
using namespace eqlab::eisen;

namespace {

// Direct evaluation of the Fourier expansion with certified kernels, bypassing
// the Chebyshev table.
double direct_series(const EisensteinSeries& s, double y) {
  const auto& c = s.constants;
  double sum = 0.0;
  for (std::int64_t n = 1; n <= s.n_max; ++n)
    sum += s.tau[n] * specfun::scaled_bessel_k(s.T, 2.0 * kPi * n * y).value;
  return 2.0 * std::sqrt(y) *
         (std::cos(std::arg(c.mu) + s.T * std::log(y)) + std::sqrt(2.0 * kPi) * c.rho_star_1_scaled * sum);
}

const EisensteinSeries& series100() {
  static const EisensteinSeries s = [] {
    SeriesOptions o;
    o.y_lo = 1.0 / 3.0;
    return build_series(100.0, o);
  }();
  return s;
}

}  // namespace

TEST(Truncation, RuleValues) {
  EXPECT_EQ(truncation_index(100.0, 0.9), 35);
  EXPECT_EQ(truncation_index(1000.0, 0.9), 206);
}

TEST(ScaledBesselTable, MatchesKernel) {
  const double T = 300.0;
  const ScaledBesselTable tab(T, 5.0, 1200.0);
  EXPECT_LE(tab.abs_error_bound(), 1e-9);
  for (int i = 0; i <= 400; ++i) {
    const double u = 5.0 + (1200.0 - 5.0) * (i + 0.318) / 401.0;
    ASSERT_NEAR(tab(u), specfun::scaled_bessel_k(T, u).value, 2.0 * tab.abs_error_bound()) << u;
  }
}

TEST(Series, DefaultWindowTail) {
  const auto s = build_series(100.0);
  EXPECT_EQ(s.n_max, 35);
  EXPECT_LE(s.tail_bound, 1e-9);
  SeriesOptions o;
  o.n_max = 2 * s.n_max;
  const auto d = build_series(100.0, o);
  EXPECT_LT(d.tail_bound, s.tail_bound);
  for (int i = 0; i < 20; ++i) {
    const double y = 0.9 + 2.5 * (i + 0.5) / 20.0;
    EXPECT_LE(std::abs(s(y) - d(y)), 2.0 * s.tail_bound + s.abs_error_bound(y) + d.abs_error_bound(y)) << y;
  }
}

TEST(Series, MatchesDirectKernelSum) {
  const auto& s = series100();
  for (double y : {0.34, 0.5, 1.0, 1.7, 2.9, 3.4}) EXPECT_NEAR(s(y), direct_series(s, y), 1e-9) << y;
}

TEST(Series, Automorphy) {
  for (double T : {50.0, 100.0}) {
    SeriesOptions o;
    o.y_lo = 1.0 / 3.0;
    const auto s = T == 100.0 ? series100() : build_series(T, o);
    for (int i = 0; i < 50; ++i) {
      const double y = std::exp(std::log(3.0) * (i + 0.5) / 50.0);
      const double a = s(y), b = s(1.0 / y);
      EXPECT_LE(std::abs(a - b), 1e-6 * std::max(1.0, std::abs(a))) << "T=" << T << " y=" << y;
    }
  }
}

TEST(Series, WindowEdgesEvaluate) {
  // Window ends that are not exactly representable products.
  for (double T : {100.0, 1000.0}) {
    SeriesOptions o;
    o.y_lo = 0.8769;
    o.y_hi = 3.4171;
    const auto s = build_series(T, o);
    EXPECT_TRUE(std::isfinite(s(o.y_lo)));
    EXPECT_TRUE(std::isfinite(s(o.y_hi)));
    EXPECT_NO_THROW(count_sign_changes(s, o.y_hi - 0.01, o.y_hi));
  }
}

TEST(Series, Errors) {
  const auto s = build_series(20.0);
  EXPECT_THROW(s(0.5), WindowError);
  EXPECT_THROW(s(3.5), WindowError);
  EXPECT_THROW(build_series(5.0), DomainError);
  SeriesOptions o;
  o.n_max = 3;
  EXPECT_THROW(build_series(20.0, o), DomainError);
  o.n_max = arith::kMaxTableSize + 1;
  EXPECT_THROW(build_series(20.0, o), CapacityError);
  EXPECT_THROW(count_sign_changes(s, 0.5, 3.0), WindowError);
}

TEST(SignChanges, Surrogates) {
  const auto one = count_sign_changes([](double) { return 1.0; }, 50.0, 1.0, 3.0);
  EXPECT_EQ(one.count, 0);
  EXPECT_TRUE(one.zeros.empty());
  for (double T : {50.0, 200.0, 1000.0}) {
    const auto r = count_sign_changes([&](double y) { return std::cos(T * std::log(y)); }, T, 1.0, 3.0);
    EXPECT_NEAR(static_cast<double>(r.count), std::floor(T * std::log(3.0) / kPi), 1.0) << T;
    for (std::size_t k = 0; k < r.zeros.size(); ++k) {
      EXPECT_NEAR(std::cos(T * std::log(r.zeros[k])), 0.0, 1e-9);
      if (k) {
        EXPECT_GT(r.zeros[k], r.zeros[k - 1]);
      }
    }
  }
}

TEST(SignChanges, NearTangencyFlagged) {
  SignChangeOptions o;
  o.noise = 1e-7;
  const auto r = count_sign_changes([](double y) { return (y - 2.0) * (y - 2.0); }, 50.0, 1.0, 3.0, o);
  EXPECT_EQ(r.count, 0);
  EXPECT_TRUE(r.suspicious);
}

TEST(SignChanges, SeriesT200StableAndPositive) {
  const auto s = build_series(200.0);
  const auto r = count_sign_changes(s, 1.0, 3.0);
  EXPECT_GE(r.count, 2);
  EXPECT_EQ(r.grid_points, 64 * 200 * 2);
  SignChangeOptions o;
  o.grid_points = 2 * r.grid_points;
  EXPECT_EQ(count_sign_changes(s, 1.0, 3.0, o).count, r.count);
  SeriesOptions so;
  so.n_max = s.n_max + 50;
  EXPECT_EQ(count_sign_changes(build_series(200.0, so), 1.0, 3.0).count, r.count);
  for (double z : r.zeros) {
    EXPECT_GT(z, 1.0);
    EXPECT_LT(z, 3.0);
    EXPECT_LT(s(z - 1e-9) * s(z + 1e-9), 0.0) << z;
  }
}

TEST(SignChanges, ThreadCountInvariant) {
  const auto s = build_series(100.0);
  SignChangeOptions o1, o4;
  o4.threads = 4;
  const auto a = count_sign_changes(s, 1.0, 3.0, o1), b = count_sign_changes(s, 1.0, 3.0, o4);
  EXPECT_EQ(a.zeros, b.zeros);
}
