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

#include "relayqos/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "relayqos/errors.hpp"

namespace relayqos {
namespace {

constexpr double kE = 2.71828182845904523536028747135266250;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// Expansion of W about the branch point in p = +-sqrt(2 (1 + e x)).
double BranchPointSeries(double p) {
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 +
                         p * (11.0 / 72.0 +
                              p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

// 1 + e*x for x >= -1/e, clamped at zero against rounding of the constant.
double DistanceFromBranchPoint(double x) {
  return std::max(0.0, std::fma(kE, x, 1.0));
}

// Halley refinement of w * exp(w) = x.
double HalleyRefine(double w, double x) {
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 0.25 * kEps * std::abs(x)) break;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 2.0 * kEps * std::abs(w)) break;
  }
  return w;
}

// Newton refinement of w + log(|w|) = log(|x|), used far from the branch point
// where w * exp(w) would lose range.
double LogNewtonRefine(double w, double log_abs_x) {
  for (int i = 0; i < 64; ++i) {
    const double g = w + std::log(std::abs(w)) - log_abs_x;
    const double step = g / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 2.0 * kEps * std::abs(w)) break;
  }
  return w;
}

double PrincipalBranch(double x) {
  if (x == 0.0) return 0.0;
  if (x > kE) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return LogNewtonRefine(l1 - l2 + l2 / l1, l1);
  }
  double guess;
  if (x < -0.25) {
    guess = BranchPointSeries(std::sqrt(2.0 * DistanceFromBranchPoint(x)));
  } else {
    // Winitzki's uniform approximation.
    const double l = std::log1p(x);
    guess = l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  return HalleyRefine(guess, x);
}

double MinusOneBranch(double x) {
  if (x < -0.25) {
    const double guess =
        BranchPointSeries(-std::sqrt(2.0 * DistanceFromBranchPoint(x)));
    return std::min(-1.0, HalleyRefine(guess, x));
  }
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return std::min(-1.0, LogNewtonRefine(l1 - l2 + l2 / l1, l1));
}

// Modified Lentz evaluation of the Legendre continued fraction; returns
// G(a, z) * e^z * z^(-a). Converges for every real a when z > 0.
double ScaledContinuedFraction(double a, double z) {
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= kEps) return h;
  }
  throw ConvergenceError(
      fmt::format("incomplete gamma continued fraction did not converge "
                  "(a={}, z={})",
                  a, z),
      h);
}

// log G(a, z) = log(Gamma(a) - gamma(a, z)) for a > 0 and z <= a + 1, where the
// lower function is the convergent power series.
double LogComplementOfLowerSeries(double a, double z) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= z / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      const double lower_fraction =
          std::exp(a * std::log(z) - z - std::lgamma(a)) * sum;
      return std::lgamma(a) + std::log1p(-lower_fraction);
    }
  }
  throw ConvergenceError(
      fmt::format("incomplete gamma series did not converge (a={}, z={})", a,
                  z),
      term / sum);
}

// (Gamma(1 + a) - 1) / a, smooth through a = 0.
double GammaOnePlusMinusOneOverA(double a) {
  if (std::abs(a) >= 1e-2) return (std::tgamma(1.0 + a) - 1.0) / a;
  static constexpr std::array<double, 11> kZeta = {
      1.6449340668482264, 1.2020569031595943, 1.0823232337111382,
      1.0369277551433699, 1.0173430619844491, 1.0083492773819228,
      1.0040773561979443, 1.0020083928260822, 1.0009945751278181,
      1.0004941886041195, 1.0002460865533080};
  double log_gamma = -kEulerGamma * a;
  double power = -a;  // (-a)^k
  for (std::size_t i = 0; i < kZeta.size(); ++i) {
    const int k = static_cast<int>(i) + 2;
    power *= -a;
    log_gamma += kZeta[i] * power / k;
  }
  return a == 0.0 ? -kEulerGamma : std::expm1(log_gamma) / a;
}

// G(a, z) * e^z * z^(-a) for -1/2 < a <= 1/2 and small z, written so that each
// piece is regular at a = 0:
//   G = (Gamma(a) - 1/a) - (z^a - 1)/a - z^a * sum_{n>=1} (-z)^n / (n! (a+n)).
double ScaledSmallArgument(double a, double z) {
  const double log_z = std::log(z);
  const double head = GammaOnePlusMinusOneOverA(a);
  const double power_term = a == 0.0 ? log_z : std::expm1(a * log_z) / a;
  double factor = 1.0;
  double tail = 0.0;
  for (int n = 1; n < kMaxIterations; ++n) {
    factor *= -z / n;
    const double term = factor / (a + n);
    tail += term;
    if (std::abs(term) <= kEps * std::abs(tail)) break;
  }
  const double z_pow_a = std::exp(a * log_z);
  const double value = head - power_term - z_pow_a * tail;
  return value * std::exp(z) / z_pow_a;
}

}  // namespace

double lambert_w(BranchedWArg arg) {
  const double x = arg.x;
  if (std::isnan(x)) throw DomainError("lambert_w: NaN argument");
  if (x < -kInvE) {
    throw DomainError(fmt::format("lambert_w: x = {} is below -1/e", x));
  }
  if (x == -kInvE) return -1.0;
  if (arg.branch == WBranch::kPrincipal) return PrincipalBranch(x);
  if (x >= 0.0) {
    throw DomainError(
        fmt::format("lambert_w: minus-one branch requires x < 0, got {}", x));
  }
  return MinusOneBranch(x);
}

double log_scaled_upper_incomplete_gamma(double a, double z) {
  if (!(z > 0.0) || std::isnan(a)) {
    throw DomainError(
        fmt::format("upper_incomplete_gamma: requires z > 0, got z = {}", z));
  }
  if (std::isinf(z)) {
    throw DomainError("upper_incomplete_gamma: z must be finite");
  }
  if (z > std::max(1.5, a + 1.0)) {
    return std::log(ScaledContinuedFraction(a, z));
  }
  if (a > 0.5) return LogComplementOfLowerSeries(a, z) - a * std::log(z) + z;

  // Shift a up into (-1/2, 1/2] and recur back down with
  // G(a-1, z) = (G(a, z) - z^(a-1) e^(-z)) / (a-1), which in the scaled
  // variable reads r(a-1) = (z r(a) - 1) / (a-1).
  const int shift = a > -0.5 ? 0 : static_cast<int>(std::floor(-a - 0.5)) + 1;
  double shifted = a + shift;
  double scaled = ScaledSmallArgument(shifted, z);
  for (int k = 0; k < shift; ++k) {
    scaled = (z * scaled - 1.0) / (shifted - 1.0);
    shifted -= 1.0;
  }
  return std::log(scaled);
}

double log_upper_incomplete_gamma(double a, double z) {
  const double scaled = log_scaled_upper_incomplete_gamma(a, z);
  return a * std::log(z) - z + scaled;
}

double upper_incomplete_gamma(double a, double z) {
  const double log_value = log_upper_incomplete_gamma(a, z);
  const double value = std::exp(log_value);
  if (!std::isfinite(value) || value == 0.0) {
    throw RangeError(fmt::format(
        "upper_incomplete_gamma(a={}, z={}) = exp({}) is not representable", a,
        z, log_value));
  }
  return value;
}

double qos_rate_target(double delay_bound, double xi) {
  if (!(delay_bound > 0.0)) {
    throw DomainError(fmt::format(
        "qos_rate_target: delay bound must be positive, got {}", delay_bound));
  }
  if (!(xi > 0.0 && xi < 1.0)) {
    throw DomainError(fmt::format(
        "qos_rate_target: violation probability must lie in (0, 1), got {}",
        xi));
  }
  const double w = lambert_wm1(std::max(-xi * kInvE, -kInvE));
  return -(1.0 + w) / delay_bound;
}

}  // namespace relayqos
