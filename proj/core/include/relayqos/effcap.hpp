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

#ifndef RELAYQOS_EFFCAP_HPP_
#define RELAYQOS_EFFCAP_HPP_

namespace relayqos {

// One Rayleigh-faded hop running at the Shannon rate BT log(1 + kappa h) per
// frame, with h exponential of mean `mean_gain` and unit noise power.
struct LinkModel {
  double tx_power;    // kappa (linear)
  double mean_gain;   // E{h}
  double bt_product;  // bandwidth [Hz] x transmission time [s]

  // kappa * E{h}. The rate distribution depends on (kappa, E{h}) only
  // through this product.
  double effective_snr() const { return tx_power * mean_gain; }
};

// Throws DomainError unless every field is positive and finite.
void validate(const LinkModel& link);

// Per-frame QoS exponent theta in 1/nats.
struct QoSExponent {
  double theta;

  double beta(double bt_product) const { return bt_product * theta; }
};

// Below this theta the closed forms lose all precision and every effective
// rate is replaced by its theta -> 0 limit, the ergodic rate.
inline constexpr double kSmallThetaLimit = 1e-8;

// BT E[log(1 + kappa h)] in nats/frame, by quadrature.
double ergodic_rate(const LinkModel& link);

// log E[exp(-theta R)] = log E[(1 + kappa h)^(-beta)]
//   = 1/kappa + beta log(1/kappa) + log G(1 - beta, 1/kappa).
double log_moment_capacity(QoSExponent theta, const LinkModel& link);

// log E[exp(theta R)] = log E[(1 + kappa h)^beta]
//   = 1/kappa - beta log(1/kappa) + log G(1 + beta, 1/kappa).
// This is theta * A(theta), convex and increasing in theta.
double log_moment_bandwidth(QoSExponent theta, const LinkModel& link);

// C(theta) = -(1/theta) log E[exp(-theta R)], nats/frame.
double effective_capacity_rayleigh(QoSExponent theta, const LinkModel& link);

// A(theta) = (1/theta) log E[exp(theta R)] of the hop's service process when
// it feeds the next queue, nats/frame.
double effective_bandwidth_service_rayleigh(QoSExponent theta,
                                            const LinkModel& link);

// Effective bandwidth of a constant-rate source: the rate itself.
double effective_bandwidth_constant(QoSExponent theta, double rate);

// Quadrature versions of the two Rayleigh moments and rates above. They never
// touch the incomplete gamma function and serve as an independent check.
double capacity_moment_oracle(QoSExponent theta, const LinkModel& link);
double bandwidth_moment_oracle(QoSExponent theta, const LinkModel& link);
double effective_capacity_oracle(QoSExponent theta, const LinkModel& link);
double effective_bandwidth_oracle(QoSExponent theta, const LinkModel& link);

}  // namespace relayqos

#endif  // RELAYQOS_EFFCAP_HPP_
