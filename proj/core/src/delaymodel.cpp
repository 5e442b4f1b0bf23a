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

#include "relayqos/delaymodel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "relayqos/errors.hpp"
#include "relayqos/specfun.hpp"

namespace relayqos {
namespace {

void ValidateLaw(HopDelayLaw law) {
  if (!(law.rate > 0.0) || !std::isfinite(law.rate)) {
    throw DomainError(
        fmt::format("hop delay rate must be positive, got {}", law.rate));
  }
}

void ValidateDelay(double x) {
  if (!(x >= 0.0)) {
    throw DomainError(fmt::format("delay must be non-negative, got {}", x));
  }
}

}  // namespace

double single_hop_ccdf(HopDelayLaw law, double x) {
  ValidateLaw(law);
  ValidateDelay(x);
  return std::exp(-law.rate * x);
}

double single_hop_pdf(HopDelayLaw law, double x) {
  ValidateLaw(law);
  ValidateDelay(x);
  return law.rate * std::exp(-law.rate * x);
}

double two_hop_ccdf(HopDelayLaw first, HopDelayLaw second, double x) {
  ValidateLaw(first);
  ValidateLaw(second);
  ValidateDelay(x);
  // Ordered so that the result is bit-identical under swapping the hops.
  const double a = std::min(first.rate, second.rate);
  const double b = std::max(first.rate, second.rate);
  if ((b - a) / b < kEqualRateThreshold) {
    const double mean = 0.5 * (a + b);
    return (1.0 + mean * x) * std::exp(-mean * x);
  }
  // (b e^{-ax} - a e^{-bx}) / (b - a), rearranged as
  // e^{-ax} (1 + a (1 - e^{-(b-a)x}) / (b - a)) to avoid cancellation.
  const double gap = b - a;
  return std::exp(-a * x) * (1.0 - a * std::expm1(-gap * x) / gap);
}

double two_hop_tail_exponent(HopDelayLaw first, HopDelayLaw second) {
  ValidateLaw(first);
  ValidateLaw(second);
  return std::min(first.rate, second.rate);
}

HopDelayLaw invert_equal_rate_ccdf(double delay_bound, double xi) {
  return {qos_rate_target(delay_bound, xi)};
}

}  // namespace relayqos
