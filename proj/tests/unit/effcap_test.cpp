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

#include <cmath>

#include <gtest/gtest.h>

#include "relayqos/errors.hpp"
#include "relayqos/specfun.hpp"

namespace relayqos {
namespace {

double RelErr(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

// e E1(1) and E1(1), mpmath.
constexpr double kEE1 = 0.596347362323194074341078499369;
constexpr double kE1 = 0.21938393439552027367716377546;

TEST(EffectiveCapacity, UnitBetaUnitSnr) {
  // beta = BT theta = 1 with BT = 200.
  const LinkModel link{1.0, 1.0, 200.0};
  const QoSExponent theta{1.0 / 200.0};
  const double want = -200.0 * std::log(std::exp(1.0) * kE1);
  EXPECT_LT(RelErr(effective_capacity_rayleigh(theta, link), want), 1e-12);
  EXPECT_LT(RelErr(capacity_moment_oracle(theta, link), kEE1), 1e-10);
}

TEST(EffectiveBandwidth, UnitBetaUnitSnr) {
  const LinkModel link{1.0, 1.0, 200.0};
  const QoSExponent theta{1.0 / 200.0};
  EXPECT_LT(RelErr(effective_bandwidth_service_rayleigh(theta, link),
                   200.0 * std::log(2.0)),
            1e-12);
}

TEST(EffectiveBandwidth, SecondMomentOracle) {
  const LinkModel link{1.0, 1.0, 1.0};
  EXPECT_LT(RelErr(bandwidth_moment_oracle({2.0}, link), 5.0), 1e-10);
  EXPECT_LT(RelErr(std::exp(log_moment_bandwidth({2.0}, link)), 5.0), 1e-12);
}

TEST(EffectiveBandwidth, ConstantProcess) {
  EXPECT_EQ(effective_bandwidth_constant({0.37}, 138.63), 138.63);
  EXPECT_EQ(effective_bandwidth_constant({1e-3}, 0.0), 0.0);
  EXPECT_EQ(effective_bandwidth_constant({5.0}, 7.0), 7.0);
  EXPECT_THROW(effective_bandwidth_constant({1.0}, -1.0), DomainError);
}

TEST(ErgodicRate, ExponentialIntegralForm) {
  for (double snr : {0.1, 1.0, 4.0, 100.0}) {
    const LinkModel link{snr, 1.0, 100.0};
    const double z = 1.0 / snr;
    const double want = 100.0 * std::exp(z) * std::exp(
        log_upper_incomplete_gamma(0.0, z));
    EXPECT_LT(RelErr(ergodic_rate(link), want), 1e-11) << snr;
  }
  EXPECT_LT(RelErr(ergodic_rate({1.0, 1.0, 1.0}), kEE1), 1e-11);
}

TEST(EffectiveCapacity, SmallThetaLimit) {
  const LinkModel link{2.0, 0.5, 200.0};
  const double ergodic = ergodic_rate(link);
  EXPECT_EQ(effective_capacity_rayleigh({1e-9}, link), ergodic);
  EXPECT_EQ(effective_bandwidth_service_rayleigh({1e-9}, link), ergodic);
  EXPECT_LT(RelErr(effective_capacity_rayleigh({2e-8}, link), ergodic), 1e-5);
  EXPECT_LT(RelErr(effective_bandwidth_service_rayleigh({2e-8}, link), ergodic),
            1e-5);
  // beta = 0 moment is exactly one.
  EXPECT_NEAR(capacity_moment_oracle({0.0}, link), 1.0, 1e-14);
}

TEST(EffectiveCapacity, ClosedFormMatchesQuadrature) {
  for (double theta : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    for (double snr : {0.1, 0.5, 2.0, 10.0, 100.0}) {
      const LinkModel link{snr, 1.0, 200.0};
      EXPECT_LE(RelErr(effective_capacity_rayleigh({theta}, link),
                       effective_capacity_oracle({theta}, link)),
                1e-6)
          << theta << " " << snr;
      EXPECT_LE(RelErr(effective_bandwidth_service_rayleigh({theta}, link),
                       effective_bandwidth_oracle({theta}, link)),
                1e-6)
          << theta << " " << snr;
    }
  }
}

TEST(EffectiveCapacity, Monotonicity) {
  const LinkModel link{3.0, 1.0, 200.0};
  double c_prev = ergodic_rate(link);
  double a_prev = c_prev;
  double log_mgf_prev = 0.0;
  for (double theta = 1e-5; theta < 0.3; theta *= 1.4) {
    const double c = effective_capacity_rayleigh({theta}, link);
    const double a = effective_bandwidth_service_rayleigh({theta}, link);
    EXPECT_LT(c, c_prev) << theta;
    EXPECT_GT(a, a_prev) << theta;
    EXPECT_GT(c, 0.0);
    EXPECT_GT(theta * a, log_mgf_prev);
    c_prev = c;
    a_prev = a;
    log_mgf_prev = theta * a;
  }
  for (double theta : {1e-4, 1e-2}) {
    double c_prev_power = 0.0;
    double a_prev_power = 0.0;
    for (double kappa = 0.05; kappa < 500.0; kappa *= 1.7) {
      const LinkModel l{kappa, 1.0, 200.0};
      const double c = effective_capacity_rayleigh({theta}, l);
      const double a = effective_bandwidth_service_rayleigh({theta}, l);
      EXPECT_GT(c, c_prev_power);
      EXPECT_GT(a, a_prev_power);
      c_prev_power = c;
      a_prev_power = a;
    }
  }
}

TEST(EffectiveCapacity, OrderingAroundErgodicRate) {
  for (double snr : {0.2, 5.0, 60.0}) {
    const LinkModel link{snr, 1.0, 150.0};
    const double mean = ergodic_rate(link);
    for (double theta : {1e-4, 1e-3, 1e-2}) {
      EXPECT_LT(effective_capacity_rayleigh({theta}, link), mean);
      EXPECT_GT(effective_bandwidth_service_rayleigh({theta}, link), mean);
    }
  }
}

TEST(EffectiveCapacity, ScaleAbsorption) {
  const LinkModel split{2.5, 0.064, 200.0};
  const LinkModel merged{2.5 * 0.064, 1.0, 200.0};
  for (double theta : {1e-4, 1e-2}) {
    EXPECT_EQ(effective_capacity_rayleigh({theta}, split),
              effective_capacity_rayleigh({theta}, merged));
    EXPECT_EQ(effective_bandwidth_service_rayleigh({theta}, split),
              effective_bandwidth_service_rayleigh({theta}, merged));
  }
}

TEST(EffectiveCapacity, InvalidInputs) {
  EXPECT_THROW(effective_capacity_rayleigh({1e-3}, {0.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(effective_capacity_rayleigh({1e-3}, {1.0, -1.0, 1.0}),
               DomainError);
  EXPECT_THROW(effective_capacity_rayleigh({1e-3}, {1.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(effective_capacity_rayleigh({0.0}, {1.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(effective_bandwidth_service_rayleigh({-1.0}, {1.0, 1.0, 1.0}),
               DomainError);
}

}  // namespace
}  // namespace relayqos
