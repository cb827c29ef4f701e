// Prints e^{pi T/2} K_{iT}(y) across the transition y = T, and the Debye
// approximation where it applies (y > T).

#include <cstdio>

#include "eqlab/specfun.hpp"

int main() {
  using namespace eqlab;
  for (double T : {10.0, 100.0, 1000.0}) {
    std::printf("T = %g\n%10s %24s %12s %24s\n", T, "y/T", "scaled K", "err bound", "Debye");
    for (double r : {0.25, 0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 1.5}) {
      const double y = r * T;
      const auto v = specfun::scaled_bessel_k(T, y);
      std::printf("%10.3f %24.16e %12.2e", r, v.value, v.abs_error_bound);
      if (y > T)
        std::printf(" %24.16e\n", specfun::scaled_bessel_k_debye(T, y));
      else
        std::printf(" %24s\n", "-");
    }
  }
}
