#include <gtest/gtest.h>

#include <cmath>

#include "eqlab/corr.hpp"

using namespace eqlab;
using namespace eqlab::corr;

namespace {

const testfn::BumpFunction kPsi = testfn::make_bump(2.0, 0.5);

const eisen::EisensteinSeries& series100() {
  static const auto s = eisen::build_series(100.0);
  return s;
}

const FGrid& grid100() {
  static const auto g = compute_F_grid(series100(), kPsi, default_t_step(kPsi), default_t_max(100.0, kPsi));
  return g;
}

}  // namespace

TEST(MainTerm, Formula) {
  const double l1 = 0.0166;
  EXPECT_NEAR(main_term(200.0, 4.0, l1),
              2.0 * 3.0 / kPi * std::log(0.25 + 40000.0) * specfun::bessel_j0(4.0) * l1, 1e-15);
  EXPECT_LT(main_term(200.0, 4.0, l1), 0.0);
  EXPECT_GT(main_term(200.0, 0.0, l1), 0.0);
}

TEST(CorrelationDirect, NonnegativeAtZeroShift) {
  const auto r = correlation_direct(series100(), 0.0, kPsi);
  EXPECT_GT(r.value, 0.0);
  EXPECT_LE(r.abs_error, 1e-7 * r.value);
}

TEST(CorrelationDirect, SwappedFactorsAgree) {
  for (double a : {1.0, 4.0, -3.0}) {
    const auto r = correlation_direct(series100(), a, kPsi);
    const auto q = correlation_direct(series100(), a, kPsi, true);
    EXPECT_NEAR(r.value, q.value, r.abs_error + q.abs_error) << a;
  }
}

TEST(CorrelationDirect, Errors) {
  const auto s = eisen::build_series(40.0);
  EXPECT_THROW(correlation_direct(s, 1.0, kPsi), DomainError);
  EXPECT_THROW(correlation_direct(series100(), 1.0, testfn::make_bump(3.3, 0.5)), WindowError);
}

TEST(FOfS, RoutesAgree) {
  for (cplx z : {cplx(0.0, 0.3), cplx(0.2, -5.0), cplx(-0.4, 60.0)}) {
    const cplx a = F_of_s(series100(), kPsi, z, FRoute::direct);
    const cplx b = F_of_s(series100(), kPsi, z, FRoute::series);
    EXPECT_LE(std::abs(a - b), 1e-6) << z;
  }
}

TEST(FOfS, ConjugateSymmetry) {
  const cplx z(0.1, 7.5);
  for (auto route : {FRoute::direct, FRoute::series}) {
    const cplx a = F_of_s(series100(), kPsi, z, route), b = F_of_s(series100(), kPsi, std::conj(z), route);
    EXPECT_LE(std::abs(a - std::conj(b)), 1e-9);
  }
}

TEST(FOfS, ContourPlacement) {
  EXPECT_THROW(F_of_s(series100(), kPsi, cplx(0.0, 1.0), FRoute::series, 0.4), ContourError);
  EXPECT_NO_THROW(F_of_s(series100(), kPsi, cplx(0.0, 1.0), FRoute::series, 0.6));
  EXPECT_THROW(F_of_s(series100(), kPsi, cplx(3.0, 0.0), FRoute::direct), DomainError);
}

TEST(FOfS, DecayBeyondTransitionTracksBumpTransform) {
  // Past t = T + T^0.9 only the constant-term pieces of F survive, and they
  // are psi~ evaluated at distance t - T from the spectral parameter.
  const double T = 100.0, t = T + 2.0 * std::pow(T, 0.9);
  const cplx F = F_of_s(series100(), kPsi, cplx(0.0, t), FRoute::series);
  const testfn::MellinSampler ms(kPsi, t + T + 10.0);
  const double envelope = std::abs(ms(cplx(0.5, t - T))) + std::abs(ms(cplx(0.5, t + T)));
  EXPECT_LE(std::abs(F), 1.01 * envelope);
  EXPECT_LE(std::abs(F), 1e-2 * std::abs(F_of_s(series100(), kPsi, cplx(0.0, 10.0), FRoute::series)));
}

TEST(FGrid, MatchesPointwiseSeriesRoute) {
  const auto& g = grid100();
  for (std::int64_t k : {std::int64_t{0}, std::int64_t{17}, -g.K / 3, g.K / 2}) {
    const cplx ref = F_of_s(series100(), kPsi, cplx(0.0, k * g.h), FRoute::direct);
    EXPECT_LE(std::abs(g.at(k) - ref), 1e-9) << k;
    EXPECT_LE(std::abs(g.at(-k) - std::conj(g.at(k))), 1e-12);
  }
}

TEST(Parseval, AgreesWithDirectAndIsReal) {
  const auto& g = grid100();
  for (double a : {0.0, 4.0}) {
    const auto p = parseval_sum(g, a);
    const auto d = correlation_direct(series100(), a, kPsi);
    EXPECT_LE(std::abs(p.value - d.value), 1e-6 * std::max(1.0, std::abs(d.value))) << a;
    EXPECT_LE(std::abs(p.imag), 1e-9);
    EXPECT_LE(p.richardson, 1e-8);
    if (a == 0.0) {
      EXPECT_GT(p.value, 0.0);
    }
  }
}

TEST(Report, FieldsConsistent) {
  const auto r = correlation_report(series100(), 1.0, kPsi, &grid100());
  EXPECT_EQ(r.T, 100.0);
  EXPECT_NEAR(r.route_gap, std::abs(r.I_direct - r.I_parseval), 0.0);
  EXPECT_NEAR(r.deviation, r.I_direct - r.main_term, 0.0);
  EXPECT_NEAR(r.main_term, main_term(100.0, 1.0, r.l1_sq), 0.0);
  EXPECT_LE(r.route_gap, 1e-6);
}

TEST(WeightW, ContourShiftInvariance) {
  const double T = 400.0, t = 100.0;
  for (std::int64_t n : {20, 30}) {
    const auto a = weight_W(T, kPsi, n, t, 0.6), b = weight_W(T, kPsi, n, t, 1.2);
    EXPECT_LE(std::abs(a.W - b.W), 1e-8) << n;
  }
}

TEST(WeightW, FarOutsideSupportVanishes) {
  const double T = 400.0, t = 100.0;
  const double r = std::sqrt(T * T - t * t) / (2.0 * kPi);
  const auto n = static_cast<std::int64_t>(4.0 * r / kPsi.lo());
  const auto w = weight_W(T, kPsi, n, t);
  EXPECT_EQ(w.predictor, 0.0);
  EXPECT_LE(std::abs(w.W), 1e-6);
}

TEST(WeightW, ApproachesPredictor) {
  auto gap = [](double T) {
    const double t = 0.25 * T, r = std::sqrt(T * T - t * t) / (2.0 * kPi);
    const auto n = std::lround(r / 2.0);
    const auto w = weight_W(T, kPsi, n, t);
    return std::abs(w.W - w.predictor);
  };
  EXPECT_LT(gap(400.0), gap(100.0));
}

TEST(WeightW, Errors) {
  EXPECT_THROW(weight_W(100.0, kPsi, 5, 50.0), RegimeError);
  EXPECT_THROW(weight_W(100.0, kPsi, 5, 10.0, 0.5), ContourError);
  EXPECT_THROW(weight_integral(100.0, kPsi, 5, 100.0), RegimeError);
  EXPECT_THROW(weight_W(100.0, kPsi, 0, 10.0), DomainError);
}

TEST(GOfT, ApproximatesF) {
  const double T = 400.0, t = 0.5 * T;
  // t = T/2 sits inside T - T^0.9 only for T >= 1024; use the largest
  // admissible t instead.
  const double ta = std::min(t, T - transition_width(T));
  const auto s = eisen::build_series(T);
  const cplx F = F_of_s(s, kPsi, cplx(0.0, ta), FRoute::series), G = G_of_t(T, kPsi, ta);
  EXPECT_LE(std::abs(F - G), 1e3 * std::pow(kPsi.A, 3) / std::pow(T, 0.9));
  EXPECT_LE(std::abs(G_of_t(T, kPsi, -ta) - std::conj(G)), 1e-12);
  // No integer n puts sqrt(T^2 - t^2)/(2 pi n) inside a narrow support.
  EXPECT_EQ(std::abs(G_of_t(20.0, testfn::make_bump(2.0, 0.001), 0.0)), 0.0);
  EXPECT_THROW(G_of_t(T, kPsi, T), RegimeError);
}

TEST(Diagonal, CellAndJ0) {
  EXPECT_NEAR(c_ell(0), 1.0, 1e-15);
  EXPECT_NEAR(c_ell(2), 0.5, 1e-15);
  EXPECT_EQ(c_ell(3), 0.0);
  for (double a : {1.0, 2.0, 4.0}) EXPECT_NEAR(j0_partial_sum(a, 40), specfun::bessel_j0(a), 1e-12) << a;
  EXPECT_EQ(j0_partial_sum(0.0, 10), 1.0);
}

TEST(Diagonal, SinPowerIntegral) {
  EXPECT_NEAR(sin_power_integral(0), kPi / 2.0, 1e-14);
  EXPECT_NEAR(sin_power_integral(1), 1.0, 1e-14);
  quad::AdaptiveOptions o;
  o.rel_tol = 1e-14;
  const double q = quad::integrate<double>([](double u) { return std::pow(std::sin(u), 6); }, 0.0, kPi / 2.0, o).value;
  EXPECT_NEAR(sin_power_integral(6), q, 1e-10);
}

TEST(BinomialTail, Cases) {
  EXPECT_EQ(binomial_tail_check(0.0, cplx(3.0, 2.0), 4).residual, 0.0);
  EXPECT_LE(binomial_tail_check(0.05, 5.0, 5).residual, 1e-16);
  // Reference residual from a 60-digit expansion.
  const auto r = binomial_tail_check(0.004, cplx(0.0, -800.0), 20);
  EXPECT_NEAR(r.residual, 7.852107852063572e-10, 1e-15);
  EXPECT_LE(r.residual, r.bound);
  EXPECT_LE(binomial_tail_check(0.004, cplx(0.0, -800.0), 40).residual, 1e-15);
  for (int L : {5, 10, 30}) {
    const auto q = binomial_tail_check(cplx(0.03, -0.05), cplx(40.0, 90.0), L);
    EXPECT_LE(q.residual, q.bound) << L;
  }
  EXPECT_THROW(binomial_tail_check(0.2, 1.0, 3), DomainError);
  EXPECT_THROW(binomial_tail_check(0.05, 200.0, 3), DomainError);
}
