#include <gtest/gtest.h>

#include <cmath>

#include "eqlab/chebyshev.hpp"

using namespace eqlab;

TEST(PiecewiseChebyshev, ReproducesSmoothFunction) {
  auto f = [](double x) { return std::sin(40.0 * x) * std::exp(-x); };
  PiecewiseChebyshev::Options o;
  o.abs_tol = 1e-13;
  const auto p = PiecewiseChebyshev::fit(f, {0.0, 1.0, 2.0, 3.0}, o);
  EXPECT_GE(p.pieces(), 3u);
  EXPECT_LE(p.max_tail(), 1e-13);
  for (int i = 0; i <= 3000; ++i) {
    const double x = 3.0 * i / 3000.0;
    ASSERT_NEAR(p(x), f(x), 1e-12) << x;
  }
}

TEST(PiecewiseChebyshev, BisectsWhereNeeded) {
  auto f = [](double x) { return std::cos(300.0 * x * x); };
  const auto p = PiecewiseChebyshev::fit(f, {0.0, 1.0}, {});
  EXPECT_GT(p.pieces(), 8u);
  for (double x : {0.01, 0.33, 0.77, 0.999}) EXPECT_NEAR(p(x), f(x), 1e-11);
}

TEST(PiecewiseChebyshev, ThreadCountDoesNotChangeResult) {
  auto f = [](double x) { return std::tanh(20.0 * (x - 0.3)); };
  PiecewiseChebyshev::Options o1, o4;
  o4.threads = 4;
  const std::vector<double> br{0.0, 0.25, 0.5, 0.75, 1.0};
  const auto a = PiecewiseChebyshev::fit(f, br, o1), b = PiecewiseChebyshev::fit(f, br, o4);
  ASSERT_EQ(a.pieces(), b.pieces());
  for (int i = 0; i <= 100; ++i) EXPECT_EQ(a(i / 100.0), b(i / 100.0));
}

TEST(PiecewiseChebyshev, Errors) {
  EXPECT_THROW(PiecewiseChebyshev::fit([](double) { return 0.0; }, {1.0}, {}), DomainError);
  const auto p = PiecewiseChebyshev::fit([](double x) { return x; }, {0.0, 1.0}, {});
  EXPECT_THROW(p(1.5), RangeError);
  PiecewiseChebyshev::Options o;
  o.min_width = 0.1;
  EXPECT_THROW(PiecewiseChebyshev::fit([](double x) { return std::abs(x - 0.3141); }, {0.0, 1.0}, o),
               AccuracyError);
}

TEST(ParallelFor, PropagatesWorkerException) {
  std::vector<int> hit(100, 0);
  EXPECT_THROW(parallel_for(100, 4,
                            [&](std::size_t i) {
                              if (i == 37) throw RangeError("boom");
                              hit[i] = 1;
                            }),
               RangeError);
  EXPECT_EQ(hit[37], 0);
}
