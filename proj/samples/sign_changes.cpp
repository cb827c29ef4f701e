// Counts sign changes of E*_T(iy) on [1, 3] for a few T and compares with
// the T log 3 / pi zeros of cos(T log y).

#include <cmath>
#include <cstdio>

#include "eqlab/eisen.hpp"

int main() {
  using namespace eqlab;
  std::printf("%8s %8s %12s %10s\n", "T", "count", "T log3/pi", "min gap");
  for (double T : {100.0, 200.0, 400.0}) {
    const auto s = eisen::build_series(T);
    eisen::SignChangeOptions o;
    o.threads = 4;
    const auto r = eisen::count_sign_changes(s, 1.0, 3.0, o);
    std::printf("%8g %8lld %12.2f %10.3g%s\n", T, static_cast<long long>(r.count), T * std::log(3.0) / kPi,
                r.min_gap, r.suspicious ? "  (near tangency)" : "");
  }
}
