#pragma once

// Piecewise Chebyshev interpolant with per-piece tail-coefficient acceptance.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eqlab/errors.hpp"
#include "eqlab/numeric.hpp"

namespace eqlab {

class PiecewiseChebyshev {
 public:
  static constexpr int kNodes = 36;

  struct Options {
    double abs_tol = 1e-12;   // accepted when the last three coefficients are below this
    double min_width = 1e-9;  // give up splitting below this width
    unsigned threads = 1;
  };

  PiecewiseChebyshev() = default;

  /// Fits f on [breaks.front(), breaks.back()], starting from the given
  /// partition and bisecting pieces whose tail coefficients are too large.
  template <class F>
  static PiecewiseChebyshev fit(F&& f, const std::vector<double>& breaks, const Options& opt) {
    if (breaks.size() < 2) throw DomainError("PiecewiseChebyshev: need at least one piece");
    const std::size_t n0 = breaks.size() - 1;
    std::vector<std::vector<Piece>> parts(n0);
    parallel_for(n0, opt.threads, [&](std::size_t i) {
      // Depth-first, left piece first, so the output stays ordered.
      std::vector<std::pair<double, double>> todo{{breaks[i], breaks[i + 1]}};
      while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        Piece p = make_piece(f, a, b);
        if (p.tail <= opt.abs_tol || (b - a) <= opt.min_width) {
          if (p.tail > opt.abs_tol)
            throw AccuracyError("PiecewiseChebyshev: cannot resolve function near " + std::to_string(a));
          parts[i].push_back(std::move(p));
        } else {
          const double m = 0.5 * (a + b);
          todo.push_back({m, b});
          todo.push_back({a, m});
        }
      }
    });
    PiecewiseChebyshev out;
    for (auto& v : parts)
      for (auto& p : v) {
        out.lo_.push_back(p.a);
        out.max_tail_ = std::max(out.max_tail_, p.tail);
        out.coeffs_.insert(out.coeffs_.end(), p.c.begin(), p.c.end());
        out.hi_ = p.b;
      }
    return out;
  }

  double lo() const { return lo_.empty() ? 0.0 : lo_.front(); }
  double hi() const { return hi_; }
  std::size_t pieces() const { return lo_.size(); }
  /// Largest accepted tail sum over all pieces.
  double max_tail() const { return max_tail_; }

  double operator()(double x) const {
    if (!(x >= lo() && x <= hi_)) throw RangeError("PiecewiseChebyshev: argument outside table");
    std::size_t k = static_cast<std::size_t>(std::upper_bound(lo_.begin(), lo_.end(), x) - lo_.begin());
    k = (k == 0) ? 0 : k - 1;
    const double a = lo_[k];
    const double b = (k + 1 < lo_.size()) ? lo_[k + 1] : hi_;
    const double t = (2.0 * x - a - b) / (b - a);
    const double* c = &coeffs_[k * kNodes];
    double b1 = 0.0, b2 = 0.0;
    for (int j = kNodes - 1; j >= 1; --j) {
      const double b0 = 2.0 * t * b1 - b2 + c[j];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + c[0];
  }

 private:
  struct Piece {
    double a, b, tail;
    std::vector<double> c;
  };

  template <class F>
  static Piece make_piece(F& f, double a, double b) {
    std::vector<double> fv(kNodes);
    for (int j = 0; j < kNodes; ++j) {
      const double x = std::cos(kPi * (j + 0.5) / kNodes);
      fv[j] = f(0.5 * (a + b) + 0.5 * (b - a) * x);
    }
    Piece p{a, b, 0.0, std::vector<double>(kNodes)};
    for (int k = 0; k < kNodes; ++k) {
      double s = 0.0;
      for (int j = 0; j < kNodes; ++j) s += fv[j] * std::cos(kPi * k * (j + 0.5) / kNodes);
      p.c[k] = (k == 0 ? 1.0 : 2.0) * s / kNodes;
    }
    p.tail = std::abs(p.c[kNodes - 1]) + std::abs(p.c[kNodes - 2]) + std::abs(p.c[kNodes - 3]);
    return p;
  }

  std::vector<double> lo_;
  double hi_ = 0.0;
  std::vector<double> coeffs_;
  double max_tail_ = 0.0;
};

}  // namespace eqlab
