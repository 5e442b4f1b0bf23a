// Copyright 2026 The relayqos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RELAYQOS_BRACKET_HPP_
#define RELAYQOS_BRACKET_HPP_

#include <cmath>
#include <limits>
#include <utility>

namespace relayqos {

struct BracketedRoot {
  double x;
  double fx;
  int iterations;
};

// Brent's method (bisection safeguarding inverse-quadratic and secant steps)
// on [lo, hi] with f(lo) and f(hi) of opposite sign. Stops once |f| <= f_tol
// or the bracket has shrunk to a few ulps; returns the best point seen.
template <typename F>
BracketedRoot brent_root(F&& f, double lo, double hi, double f_lo, double f_hi,
                         double f_tol, int max_iterations = 300) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double a = lo, fa = f_lo;
  double b = hi, fb = f_hi;
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa;
  double d = 0.0;
  bool bisected = true;
  int it = 0;
  for (; it < max_iterations; ++it) {
    if (fb == 0.0 || std::abs(fb) <= f_tol) break;
    if (std::abs(b - a) <= 4.0 * kEps * std::max(1.0, std::abs(b))) break;

    double s;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) +
          b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double lo_edge = (3.0 * a + b) / 4.0;
    const bool outside = (s - lo_edge) * (s - b) > 0.0;
    const bool slow_after_bisect =
        bisected && std::abs(s - b) >= std::abs(b - c) / 2.0;
    const bool slow_after_interp =
        !bisected && std::abs(s - b) >= std::abs(c - d) / 2.0;
    const bool tiny_after_bisect =
        bisected && std::abs(b - c) < 4.0 * kEps * std::abs(b);
    const bool tiny_after_interp =
        !bisected && std::abs(c - d) < 4.0 * kEps * std::abs(b);
    if (outside || slow_after_bisect || slow_after_interp ||
        tiny_after_bisect || tiny_after_interp) {
      s = 0.5 * (a + b);
      bisected = true;
    } else {
      bisected = false;
    }

    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if ((fa < 0.0) == (fs < 0.0)) {
      a = s;
      fa = fs;
    } else {
      b = s;
      fb = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  return {b, fb, it};
}

}  // namespace relayqos

#endif  // RELAYQOS_BRACKET_HPP_
