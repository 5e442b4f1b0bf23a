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

#include "relayqos/effcap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/core.h>

#include "relayqos/errors.hpp"
#include "relayqos/quadrature.hpp"
#include "relayqos/specfun.hpp"

namespace relayqos {
namespace {

void ValidateTheta(QoSExponent theta) {
  if (!(theta.theta > 0.0) || !std::isfinite(theta.theta)) {
    throw DomainError(
        fmt::format("QoS exponent must be positive, got {}", theta.theta));
  }
}

double CheckedRate(double rate, const char* what, QoSExponent theta,
                   const LinkModel& link) {
  if (!std::isfinite(rate)) {
    throw RangeError(fmt::format("{} not representable at theta={}, snr={}",
                                 what, theta.theta, link.effective_snr()));
  }
  return rate;
}

// Panels for integrating functions of h against e^-h: resolve the knee of
// log1p(snr h) near 1/snr and the bulk of a (1 + snr h)^beta weight near beta.
std::vector<double> Breakpoints(double snr, double beta) {
  std::vector<double> points = {0.0, 1.0, 10.0, 50.0};
  const double knee = 1.0 / (snr * std::max(1.0, beta));
  if (knee < 1.0) points.push_back(knee);
  if (knee < 1e-2) points.push_back(100.0 * knee);
  if (beta > 1.0) {
    points.push_back(beta);
    points.push_back(2.0 * beta + 50.0);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points.push_back(std::numeric_limits<double>::infinity());
  return points;
}

double MomentOracle(double exponent, const LinkModel& link) {
  const double snr = link.effective_snr();
  const auto points = Breakpoints(snr, std::abs(exponent));
  const auto result = integrate(
      [&](double h) { return std::exp(exponent * std::log1p(snr * h) - h); },
      points);
  return result.value;
}

}  // namespace

void validate(const LinkModel& link) {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(link.tx_power) || !positive(link.mean_gain) ||
      !positive(link.bt_product)) {
    throw DomainError(fmt::format(
        "link model needs positive tx_power, mean_gain and bt_product; got "
        "({}, {}, {})",
        link.tx_power, link.mean_gain, link.bt_product));
  }
}

double ergodic_rate(const LinkModel& link) {
  validate(link);
  const double snr = link.effective_snr();
  const auto points = Breakpoints(snr, 0.0);
  const auto result = integrate(
      [&](double h) { return std::log1p(snr * h) * std::exp(-h); }, points);
  return link.bt_product * result.value;
}

double log_moment_capacity(QoSExponent theta, const LinkModel& link) {
  ValidateTheta(theta);
  validate(link);
  const double z = 1.0 / link.effective_snr();
  const double beta = theta.beta(link.bt_product);
  // e^z z^beta G(1 - beta, z) with the e^z z^(1-beta) envelope cancelled.
  return std::log(z) + log_scaled_upper_incomplete_gamma(1.0 - beta, z);
}

double log_moment_bandwidth(QoSExponent theta, const LinkModel& link) {
  ValidateTheta(theta);
  validate(link);
  const double z = 1.0 / link.effective_snr();
  const double beta = theta.beta(link.bt_product);
  return std::log(z) + log_scaled_upper_incomplete_gamma(1.0 + beta, z);
}

double effective_capacity_rayleigh(QoSExponent theta, const LinkModel& link) {
  ValidateTheta(theta);
  if (theta.theta < kSmallThetaLimit) return ergodic_rate(link);
  return CheckedRate(-log_moment_capacity(theta, link) / theta.theta,
                     "effective capacity", theta, link);
}

double effective_bandwidth_service_rayleigh(QoSExponent theta,
                                            const LinkModel& link) {
  ValidateTheta(theta);
  if (theta.theta < kSmallThetaLimit) return ergodic_rate(link);
  return CheckedRate(log_moment_bandwidth(theta, link) / theta.theta,
                     "effective bandwidth", theta, link);
}

double effective_bandwidth_constant(QoSExponent /*theta*/, double rate) {
  if (!(rate >= 0.0)) {
    throw DomainError(
        fmt::format("constant arrival rate must be >= 0, got {}", rate));
  }
  return rate;
}

double capacity_moment_oracle(QoSExponent theta, const LinkModel& link) {
  validate(link);
  return MomentOracle(-theta.beta(link.bt_product), link);
}

double bandwidth_moment_oracle(QoSExponent theta, const LinkModel& link) {
  validate(link);
  return MomentOracle(theta.beta(link.bt_product), link);
}

double effective_capacity_oracle(QoSExponent theta, const LinkModel& link) {
  ValidateTheta(theta);
  if (theta.theta < kSmallThetaLimit) return ergodic_rate(link);
  return CheckedRate(-std::log(capacity_moment_oracle(theta, link)) /
                         theta.theta,
                     "effective capacity (quadrature)", theta, link);
}

double effective_bandwidth_oracle(QoSExponent theta, const LinkModel& link) {
  ValidateTheta(theta);
  if (theta.theta < kSmallThetaLimit) return ergodic_rate(link);
  return CheckedRate(std::log(bandwidth_moment_oracle(theta, link)) /
                         theta.theta,
                     "effective bandwidth (quadrature)", theta, link);
}

}  // namespace relayqos
