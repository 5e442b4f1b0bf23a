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

#ifndef RELAYQOS_DELAYMODEL_HPP_
#define RELAYQOS_DELAYMODEL_HPP_

namespace relayqos {

// Exponential delay law of one hop, Pr{D > x} = exp(-rate x). The rate is
// theta * C(theta) at the hop's operating QoS exponent, in 1/frames.
struct HopDelayLaw {
  double rate;
};

// Relative rate gap below which the two-hop CCDF switches to its equal-rate
// form (1 + a x) exp(-a x).
inline constexpr double kEqualRateThreshold = 1e-6;

double single_hop_ccdf(HopDelayLaw law, double x);
double single_hop_pdf(HopDelayLaw law, double x);

// Pr{D1 + D2 > x} for independent exponential hop delays: the hypoexponential
// tail (a exp(-b x) - b exp(-a x)) / (a - b), or (1 + a x) exp(-a x) once the
// rates agree to within kEqualRateThreshold (a taken as their mean).
double two_hop_ccdf(HopDelayLaw first, HopDelayLaw second, double x);

// Asymptotic decay rate of two_hop_ccdf: the smaller hop rate.
double two_hop_tail_exponent(HopDelayLaw first, HopDelayLaw second);

// The common hop rate u with two_hop_ccdf(u, u, delay_bound) == xi.
HopDelayLaw invert_equal_rate_ccdf(double delay_bound, double xi);

}  // namespace relayqos

#endif  // RELAYQOS_DELAYMODEL_HPP_
