#pragma once

// Quick invariant suites run by `eqlab selftest`.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "eqlab/eqlab.hpp"

namespace eqlab::cli {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double a, double b, double tol, const std::string& what) {
    expect(std::abs(a - b) <= tol, what + ": |" + std::to_string(a) + " - " + std::to_string(b) + "| > " +
                                       std::to_string(tol));
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

inline void suite_specfun(Checker& c, const std::string& golden_dir) {
  for (const auto& row : golden::load_bessel(golden_dir)) {
    const auto v = specfun::scaled_bessel_k(row.T, row.y, 1e-11);
    c.near(v.value, row.scaled_k, 1e-10 * std::max(1.0, std::abs(row.scaled_k)),
           "scaled_bessel_k(" + std::to_string(row.T) + ", " + std::to_string(row.y) + ")");
  }
  const auto misc = golden::load_misc(golden_dir);
  auto close = [&](cplx got, const std::string& name, double rel) {
    const auto& r = golden::find(misc, name);
    const cplx want(r.re, r.im);
    c.expect(std::abs(got - want) <= rel * std::abs(want), name);
  };
  close(specfun::log_gamma(cplx(0.5, 50.0)), "loggamma_half_plus_50i", 1e-12);
  close(specfun::zeta(3.0), "zeta_3", 1e-12);
  close(specfun::eisenstein_constants(100.0).theta_half, "theta_half_plus_100i", 1e-10);
  close(specfun::zeta(cplx(1.0, 200.0)), "zeta_1_plus_200i", 1e-10);
  close(specfun::bessel_j0(4.0), "bessel_j0_4", 1e-12);
  c.near(specfun::bessel_j0(golden::find(misc, "bessel_j0_first_zero").re), 0.0, 1e-10, "J0 first zero");
  for (const char* k : {"bessel_j0_16", "bessel_j0_30", "bessel_j0_99"})
    c.near(specfun::bessel_j0(std::stod(std::string(k).substr(10))), golden::find(misc, k).re, 1e-12, k);
}

inline void suite_arith(Checker& c) {
  const double T = 13.7;
  const auto tab = arith::build_tau_table(T, 2500);
  for (std::int64_t n = 1; n <= 2000; ++n)
    if (std::abs(tab[n] - arith::tau_direct(T, n)) > 1e-10) {
      c.expect(false, "sieve vs direct at n=" + std::to_string(n));
      break;
    }
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
    c.near(tab[p] * tab[p], tab[p * p] + 1.0, 1e-10, "Hecke relation p=" + std::to_string(p));
  const auto z = arith::check_Z_identity(0.0, cplx(4.0, 0.0), 1000);
  c.expect(z.residual <= 1e-6, "Z identity at T=0, s=4");
  c.near(arith::sigma_minus_one(6), 2.0, 1e-15, "sigma_{-1}(6)");
}

inline void suite_eisen(Checker& c) {
  eisen::SeriesOptions o;
  o.y_lo = 1.0 / 3.0;
  const auto s = eisen::build_series(50.0, o);
  for (double y : {1.1, 1.5, 2.0, 2.5, 2.9}) {
    const double a = s(y), b = s(1.0 / y);
    c.expect(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)), "automorphy at y=" + std::to_string(y));
  }
  const auto one = eisen::count_sign_changes([](double) { return 1.0; }, 50.0, 1.0, 3.0);
  c.expect(one.count == 0, "constant surrogate has no sign changes");
  const double T = 50.0;
  const auto cosr = eisen::count_sign_changes([&](double y) { return std::cos(T * std::log(y)); }, T, 1.0, 3.0);
  const auto expected = static_cast<std::int64_t>(std::floor(T * std::log(3.0) / kPi));
  c.expect(std::abs(cosr.count - expected) <= 1, "cosine surrogate count");
}

inline double detail_integral(const testfn::BumpFunction& psi) {
  quad::AdaptiveOptions o;
  o.rel_tol = 1e-14;
  return quad::integrate<double>([&](double y) { return psi(y); }, psi.lo(), psi.hi(), o).value;
}

inline void suite_testfn(Checker& c) {
  const auto psi = testfn::make_bump(2.0, 0.5);
  const auto n = testfn::psi_norms(psi);
  c.expect(n.l1_sq > 0.0, "||psi^2||_1 > 0");
  c.near(psi(2.0), std::exp(-1.0), 1e-15, "psi(center)");
  const double direct = detail_integral(psi);
  c.near(testfn::psi_mellin(psi, cplx(1.0, 0.0)).real(), direct, 1e-10, "psi~(1) = int psi");
}

inline void suite_corr(Checker& c) {
  for (double a : {1.0, 2.0, 4.0})
    c.near(corr::j0_partial_sum(a, 40), specfun::bessel_j0(a), 1e-12, "J0 identity alpha=" + std::to_string(a));
  c.near(corr::c_ell(2), 0.5, 1e-14, "c_2");
  c.near(corr::sin_power_integral(1), 1.0, 1e-14, "sin^1 integral");
  const auto bt = corr::binomial_tail_check(cplx(0.004, 0.0), cplx(0.0, -800.0), 20);
  c.near(bt.residual, 7.852107852063572e-10, 1e-15, "binomial tail residual");
  c.expect(bt.residual <= bt.bound, "binomial tail bound");
}

inline void suite_scs(Checker& c) {
  const scs::ScsInstance in{20.0, 3, 2000.0, 4.0};
  const auto tab = arith::build_tau_table(in.T, scs::required_table_size(in));
  const double b = scs::scs_brute(in, tab), naive = scs::scs_naive(in);
  c.expect(std::abs(b - naive) <= 1e-8 * std::abs(naive), "brute vs naive");
  const auto r = scs::scs_report(in, tab);
  c.expect(std::isfinite(r.ratio) && r.ratio < 10.0, "ratio envelope");
}

inline std::vector<SuiteResult> run_selftest(const std::string& golden_dir) {
  std::vector<std::pair<std::string, std::function<void(Checker&)>>> suites = {
      {"specfun", [&](Checker& c) { suite_specfun(c, golden_dir); }},
      {"arith", suite_arith},
      {"eisen", suite_eisen},
      {"testfn", suite_testfn},
      {"corr", suite_corr},
      {"scs", suite_scs},
  };
  std::vector<SuiteResult> out;
  for (auto& [name, fn] : suites) {
    SuiteResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    try {
      fn(c);
    } catch (const golden::MissingDataError&) {
      throw;
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = c.failures().empty();
    for (const auto& f : c.failures()) r.detail += (r.detail.empty() ? "" : "; ") + f;
    out.push_back(r);
  }
  return out;
}

}  // namespace eqlab::cli
