#pragma once

// Sign-change detection through negative correlation windows: with
// J0(4) < 0, a window psi_{T,j} with I_{psi,4}(T) < 0 forces E*_T(iy) to change
// sign near its support.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "eqlab/corr.hpp"
#include "eqlab/eisen.hpp"
#include "eqlab/testfn.hpp"

namespace eqlab::experiment {

struct WindowRow {
  std::int64_t j = 0;
  double center = 0.0;
  double width = 0.0;
  double I_value = 0.0;
  double I_error = 0.0;
  double main_term = 0.0;
  bool negative = false;
  bool signchange_found = false;
  std::optional<double> zero_location;
};

/// Series window that covers every psi_{T,j} and its dilation by 1 + alpha/T.
inline eisen::SeriesOptions windows_series_options(double T, double delta, double alpha) {
  const auto J = testfn::bump_family_size(T, delta);
  const auto last = testfn::bump_family(T, delta, J);
  const double b = 1.0 + std::abs(alpha) / T;
  eisen::SeriesOptions o;
  o.y_lo = std::min(0.9, testfn::bump_family(T, delta, 1).lo() / b - 0.01);
  o.y_hi = std::max(3.4, last.hi() * b + 0.01);
  return o;
}

/// One row per j = 1..ceil(T^delta). For windows with I < 0 the sign-change
/// counter runs on the doubled window [center - width, center + width]
/// (clipped to the series window).
inline std::vector<WindowRow> run_windows(const eisen::EisensteinSeries& s, double delta, double alpha,
                                          unsigned threads = 1) {
  if (!(s.T >= 100.0)) throw DomainError("run_windows: T must be >= 100");
  const auto J = testfn::bump_family_size(s.T, delta);
  std::vector<WindowRow> rows;
  for (std::int64_t j = 1; j <= J; ++j) {
    const auto psi = testfn::bump_family(s.T, delta, j);
    WindowRow r;
    r.j = j;
    r.center = psi.center;
    r.width = psi.width;
    const auto I = corr::correlation_direct(s, alpha, psi);
    r.I_value = I.value;
    r.I_error = I.abs_error;
    r.main_term = corr::main_term(s.T, alpha, testfn::psi_norms(psi).l1_sq);
    r.negative = I.value < 0.0;
    if (r.negative) {
      const double a = std::max(s.y_lo, psi.center - psi.width);
      const double b = std::min(s.y_hi, psi.center + psi.width);
      eisen::SignChangeOptions o;
      o.threads = threads;
      const auto rep = eisen::count_sign_changes(s, a, b, o);
      r.signchange_found = rep.count > 0;
      if (r.signchange_found) {
        // Report the zero closest to the window center.
        r.zero_location = *std::min_element(rep.zeros.begin(), rep.zeros.end(), [&](double x, double y) {
          return std::abs(x - psi.center) < std::abs(y - psi.center);
        });
      }
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace eqlab::experiment
