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

#ifndef RELAYQOS_SPECFUN_HPP_
#define RELAYQOS_SPECFUN_HPP_

namespace relayqos {

// 1/e, the magnitude of the Lambert-W branch point.
inline constexpr double kInvE = 0.36787944117144232159552377016146087;

enum class WBranch { kPrincipal, kMinusOne };

struct BranchedWArg {
  double x;
  WBranch branch;
};

// Real Lambert-W: the w solving w * exp(w) == x on the requested branch.
// Principal branch: x >= -1/e, returns w >= -1.
// Minus-one branch: -1/e <= x < 0, returns w <= -1.
// Throws DomainError outside those ranges.
double lambert_w(BranchedWArg arg);

inline double lambert_w0(double x) { return lambert_w({x, WBranch::kPrincipal}); }
inline double lambert_wm1(double x) { return lambert_w({x, WBranch::kMinusOne}); }

// log G(a, z) where G(a, z) = integral_z^inf t^(a-1) e^(-t) dt, for any real a
// and z > 0. Stays finite where G itself would overflow or underflow.
double log_upper_incomplete_gamma(double a, double z);

// log(G(a, z) e^z z^(-a)). The scaling removes the e^(-z) z^a envelope, so the
// value stays O(log z) for large z where log G itself is dominated by -z.
double log_scaled_upper_incomplete_gamma(double a, double z);

// G(a, z). Throws DomainError for z <= 0 and RangeError when the value is
// outside the double range.
double upper_incomplete_gamma(double a, double z);

// The per-frame delay-tail rate u > 0 with (1 + u*D) exp(-u*D) == xi, i.e.
// u = -(1 + W_{-1}(-xi/e)) / D. `delay_bound` is in frames.
double qos_rate_target(double delay_bound, double xi);

}  // namespace relayqos

#endif  // RELAYQOS_SPECFUN_HPP_
