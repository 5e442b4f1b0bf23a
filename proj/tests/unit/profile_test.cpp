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

#include "relayqos/profile.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "relayqos/errors.hpp"

namespace relayqos {
namespace {

TEST(Units, TrafficConversion) {
  EXPECT_NEAR(bits_per_second_to_nats_per_frame(1e5, 2e-3), 138.6294361119891,
              1e-12);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> expo(0.0, 9.0);
  for (int i = 0; i < 1000; ++i) {
    const double bps = std::pow(10.0, expo(rng));
    const double tf = std::pow(10.0, -expo(rng) / 3.0);
    const double back = nats_per_frame_to_bits_per_second(
        bits_per_second_to_nats_per_frame(bps, tf), tf);
    EXPECT_LE(std::abs(back / bps - 1.0), 1e-12);
  }
}

TEST(Units, PathLoss) {
  EXPECT_EQ(path_loss_mean_gain(50.0, 50.0, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(path_loss_mean_gain(25.0, 50.0, 3.0), 8.0);
  EXPECT_DOUBLE_EQ(path_loss_mean_gain(100.0, 50.0, 2.0), 0.25);
}

TEST(Profile, DefaultScenario) {
  const RadioProfile p;
  const Scenario s = to_scenario(p);
  EXPECT_NEAR(s.traffic_load, 138.6294361119891, 1e-12);
  EXPECT_EQ(s.delay_bound, 50.0);
  EXPECT_EQ(s.violation_prob, 1e-6);
  EXPECT_EQ(s.hop1_mean_gain, 1.0);
  EXPECT_EQ(s.hop2_mean_gain, 1.0);
  // Full duplex: T = T_f / 2.
  EXPECT_DOUBLE_EQ(s.bt_product, 100.0);
}

TEST(Profile, DuplexAndOverride) {
  RadioProfile p;
  p.duplex = Duplex::kHalf;
  EXPECT_DOUBLE_EQ(to_scenario(p).bt_product, 200.0);
  p.duplex = Duplex::kFull;
  p.transmission_time = 2e-3;
  EXPECT_DOUBLE_EQ(to_scenario(p).bt_product, 200.0);
}

TEST(Profile, DelayBoundRounding) {
  RadioProfile p;
  p.delay_bound = 0.0509;
  EXPECT_EQ(delay_bound_frames(p), 25.0);
  p.delay_bound = 0.0511;
  EXPECT_EQ(delay_bound_frames(p), 26.0);
  p.delay_bound = 2e-3;
  EXPECT_EQ(delay_bound_frames(p), 1.0);
  p.delay_bound = 1.9e-3;
  EXPECT_THROW(delay_bound_frames(p), ConfigError);
  EXPECT_THROW(to_scenario(p), ConfigError);
}

TEST(Profile, Validation) {
  RadioProfile p;
  p.path_loss_exponent = 6.5;
  EXPECT_THROW(validate(p), ConfigError);
  p = {};
  p.violation_prob = 1.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = {};
  p.d1 = 0.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = {};
  p.transmission_time = -1.0;
  EXPECT_THROW(validate(p), ConfigError);
  EXPECT_NO_THROW(validate(RadioProfile{}));
}

TEST(Profile, FieldSetters) {
  RadioProfile p;
  set_profile_field(p, "d1", "70");
  set_profile_field(p, "duplex", "half");
  set_profile_field(p, "violation_prob", "1e-3");
  set_profile_field(p, "transmission_time", "0.004");
  EXPECT_EQ(p.d1, 70.0);
  EXPECT_EQ(p.duplex, Duplex::kHalf);
  EXPECT_EQ(p.violation_prob, 1e-3);
  EXPECT_EQ(p.transmission_time_or_default(), 0.004);
  set_profile_field(p, "transmission_time", "auto");
  EXPECT_EQ(p.transmission_time_or_default(), p.frame_duration);
  EXPECT_THROW(set_profile_field(p, "d3", "1"), ConfigError);
  EXPECT_THROW(set_profile_field(p, "d1", "7O"), ConfigError);
  EXPECT_THROW(set_profile_field(p, "duplex", "simplex"), ConfigError);
  EXPECT_EQ(profile_keys().size(), 11u);
  for (std::string_view key : profile_keys()) {
    RadioProfile q;
    EXPECT_NO_THROW(set_profile_field(
        q, key, key == "duplex" ? "full" : "0.5"));
  }
}

TEST(Profile, JsonConfig) {
  const RadioProfile p = parse_profile_json(R"({
    "d1": 60, "d2": 40, "duplex": "half", "traffic_load": 2e5,
    "violation_prob": 0.001, "transmission_time": null
  })");
  EXPECT_EQ(p.d1, 60.0);
  EXPECT_EQ(p.d2, 40.0);
  EXPECT_EQ(p.duplex, Duplex::kHalf);
  EXPECT_EQ(p.traffic_load, 2e5);
  EXPECT_EQ(p.violation_prob, 1e-3);
  EXPECT_FALSE(p.transmission_time.has_value());
  EXPECT_EQ(p.frame_duration, 2e-3);
  EXPECT_THROW(parse_profile_json("{"), ConfigError);
  EXPECT_THROW(parse_profile_json("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_profile_json(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_profile_json(R"({"d1": true})"), ConfigError);
}

TEST(Profile, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() /
                    "relayqos_profile_test.json";
  {
    std::ofstream out(path);
    out << R"({"delay_bound": 0.05, "bandwidth": 2e5})";
  }
  const RadioProfile p = load_profile(path);
  std::filesystem::remove(path);
  EXPECT_EQ(p.delay_bound, 0.05);
  EXPECT_EQ(p.bandwidth, 2e5);
  EXPECT_THROW(load_profile(path), ConfigError);
}

}  // namespace
}  // namespace relayqos
