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

#include "relayqos/qsim.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "relayqos/allocator.hpp"
#include "relayqos/effcap.hpp"
#include "relayqos/errors.hpp"

namespace relayqos {
namespace {

constexpr double kLoad = 138.62943611198906;  // 100 kbit/s, 2 ms frames

Scenario LightScenario() { return {kLoad, 10.0, 1e-2, 1.0, 1.0, 100.0}; }

TEST(FluidFifo, TagsLeaveInOrder) {
  FluidFifo q;
  const std::vector<FluidFifo::Tag> first{{0, 10.0}};
  const std::vector<FluidFifo::Tag> second{{1, 3.0}};
  q.arrive(10.0, first);
  q.arrive(5.0, second);
  std::vector<FluidFifo::Tag> out;
  EXPECT_DOUBLE_EQ(q.serve(4.0, out), 4.0);
  EXPECT_TRUE(out.empty());
  EXPECT_DOUBLE_EQ(q.serve(8.0, out), 8.0);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, 0u);
  EXPECT_DOUBLE_EQ(out[0].offset, 6.0);
  EXPECT_EQ(q.pending_tags(), 1u);
  out.clear();
  EXPECT_DOUBLE_EQ(q.serve(100.0, out), 3.0);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, 1u);
  EXPECT_DOUBLE_EQ(out[0].offset, 1.0);
  EXPECT_EQ(q.backlog(), 0.0);
}

TEST(Simulate, HugePowerMeansNoQueueing) {
  const Scenario s = LightScenario();
  const Allocation a{1e12, 1e12, 1e-3, 1e-3, 0.1, {}};
  SimConfig cfg;
  cfg.n_frames = 20000;
  cfg.warmup_frames = 100;
  const DelayStats st = simulate_tandem(s, a, cfg);
  ASSERT_EQ(st.size(), 19900u);
  for (std::size_t i = 0; i < st.size(); ++i) {
    EXPECT_LE(st.e2e_delays[i], 2u);
    EXPECT_EQ(st.hop1_delays[i], 0u);
  }
  cfg.forwarding = RelayForwarding::kCutThrough;
  const DelayStats ct = simulate_tandem(s, a, cfg);
  for (std::uint32_t d : ct.e2e_delays) EXPECT_EQ(d, 0u);
}

TEST(Simulate, ZeroLoadIsEmpty) {
  Scenario s = LightScenario();
  s.traffic_load = 0.0;
  const Allocation a = allocate(LightScenario());
  const DelayStats st = simulate_tandem(s, a, {});
  EXPECT_EQ(st.size(), 0u);
  EXPECT_TRUE(st.hop1_delays.empty());
}

TEST(Simulate, RejectsUnstableQueuesAndBadConfig) {
  const Scenario s = LightScenario();
  const Allocation weak{0.5, 50.0, 1e-3, 1e-3, 0.1, {}};
  EXPECT_THROW(simulate_tandem(s, weak, {}), InstabilityError);
  const Allocation weak_relay{50.0, 0.5, 1e-3, 1e-3, 0.1, {}};
  EXPECT_THROW(simulate_tandem(s, weak_relay, {}), InstabilityError);
  SimConfig cfg;
  cfg.n_frames = 10;
  cfg.warmup_frames = 10;
  EXPECT_THROW(validate(cfg), ConfigError);
  EXPECT_THROW(simulate_tandem(s, allocate(s), cfg), ConfigError);
}

class TandemRun : public ::testing::TestWithParam<RelayForwarding> {};

TEST_P(TandemRun, FlowConservationFifoAndOffsets) {
  const Scenario s = LightScenario();
  const Allocation a = allocate(s);
  SimConfig cfg;
  cfg.n_frames = 50000;
  cfg.warmup_frames = 1000;
  cfg.seed = 7;
  cfg.forwarding = GetParam();

  std::vector<double> cum_arrivals;
  std::vector<double> cum_hop1;
  std::vector<double> cum_hop2;
  double arr = 0.0, d1 = 0.0, d2 = 0.0;
  bool conserved = true;
  const DelayStats st = simulate_tandem(s, a, cfg, [&](const FrameRecord& r) {
    arr += r.source_arrivals;
    d1 += r.hop1_departures;
    d2 += r.hop2_departures;
    const double slack = 1e-9 * arr;
    conserved = conserved && d2 <= d1 + slack && d1 <= arr + slack &&
                r.hop1_backlog >= 0.0 && r.hop2_backlog >= 0.0;
    cum_arrivals.push_back(arr);
    cum_hop1.push_back(d1);
    cum_hop2.push_back(d2);
  });
  EXPECT_TRUE(conserved);
  ASSERT_EQ(st.size(), cfg.n_frames - cfg.warmup_frames);

  const std::uint32_t offset =
      cfg.forwarding == RelayForwarding::kStoreAndForward ? 1 : 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    EXPECT_EQ(st.e2e_delays[i], st.hop1_delays[i] + st.hop2_delays[i] + offset);
    // Cumulative-curve inversion: the tagged bit is bit number A(t) and
    // leaves hop 1 in the first frame whose cumulative departures reach it.
    const std::size_t born = i + cfg.warmup_frames;
    const double index = cum_arrivals[born];
    const std::size_t left1 = born + st.hop1_delays[i];
    const std::size_t left2 = born + st.e2e_delays[i];
    const double tol = 1e-9 * index;
    EXPECT_GE(cum_hop1[left1], index - tol);
    if (left1 > born) {
      EXPECT_LT(cum_hop1[left1 - 1], index + tol);
    }
    EXPECT_GE(cum_hop2[left2], index - tol);
    if (left2 > born) {
      EXPECT_LT(cum_hop2[left2 - 1], index + tol);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Forwarding, TandemRun,
                         ::testing::Values(RelayForwarding::kStoreAndForward,
                                           RelayForwarding::kCutThrough));

TEST(Simulate, SeedDeterminism) {
  const Scenario s = LightScenario();
  const Allocation a = allocate(s);
  SimConfig cfg;
  cfg.n_frames = 30000;
  cfg.seed = 99;
  const DelayStats x = simulate_tandem(s, a, cfg);
  const DelayStats y = simulate_tandem(s, a, cfg);
  EXPECT_EQ(x.hop1_delays, y.hop1_delays);
  EXPECT_EQ(x.hop2_delays, y.hop2_delays);
  EXPECT_EQ(x.e2e_delays, y.e2e_delays);
  cfg.seed = 100;
  EXPECT_NE(simulate_tandem(s, a, cfg).e2e_delays, x.e2e_delays);
}

TEST(EmpiricalCcdf, Examples) {
  const std::vector<std::uint32_t> s{1, 2, 3};
  EXPECT_EQ(empirical_ccdf(s, 0).probability, 1.0);
  EXPECT_DOUBLE_EQ(empirical_ccdf(s, 2).probability, 1.0 / 3.0);
  EXPECT_GT(empirical_ccdf(s, 2).half_width, 0.0);
  const std::vector<std::uint32_t> fives(50, 5);
  EXPECT_EQ(empirical_ccdf(fives, 5).probability, 0.0);
  EXPECT_EQ(empirical_ccdf(fives, 5).half_width, 0.0);
  EXPECT_THROW(empirical_ccdf(std::vector<std::uint32_t>{}, 1.0),
               InsufficientDataError);
}

TEST(TailSlope, SyntheticExponential) {
  std::mt19937_64 rng(17);
  std::exponential_distribution<double> expo(0.5);
  std::vector<std::uint32_t> samples(1'000'000);
  for (auto& s : samples) s = static_cast<std::uint32_t>(expo(rng));
  // Only ~30 of 10^6 samples exceed 20, so the exceedance floor is relaxed.
  EXPECT_THROW(tail_slope(samples, 2, 20), InsufficientDataError);
  EXPECT_NEAR(tail_slope(samples, 2, 20, 10), 0.5, 0.02);
  EXPECT_NEAR(tail_slope(samples, 2, 14), 0.5, 0.02);
}

TEST(TailSlope, RejectsDegenerateData) {
  const std::vector<std::uint32_t> constant(10000, 30);
  EXPECT_THROW(tail_slope(constant, 2, 20), InsufficientDataError);
  const std::vector<std::uint32_t> small(10000, 5);
  EXPECT_THROW(tail_slope(small, 2, 20), InsufficientDataError);
  EXPECT_THROW(tail_slope(small, 5, 5), DomainError);
}

TEST(WriteSamples, OnePerLine) {
  std::ostringstream out;
  write_samples(out, std::vector<std::uint32_t>{3, 0, 12});
  EXPECT_EQ(out.str(), "3\n0\n12\n");
}

// Hop 1 alone is a single queue with constant arrivals, so its delay tail
// should decay at theta1 C_SR(theta1).
TEST(Simulate, HopOneTailSlope) {
  const Scenario s = LightScenario();
  const Allocation a = allocate(s);
  SimConfig cfg;
  cfg.n_frames = 10'000'000;
  const DelayStats st = simulate_tandem(s, a, cfg);
  const double u =
      a.theta1 * effective_capacity_rayleigh(
                     {a.theta1}, {a.kappa1, s.hop1_mean_gain, s.bt_product});
  const double slope = tail_slope(st.hop1_delays, 6, 13);
  EXPECT_NEAR(slope / u, 1.0, 0.1);
}

}  // namespace
}  // namespace relayqos
