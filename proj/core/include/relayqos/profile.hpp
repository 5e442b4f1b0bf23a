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

#ifndef RELAYQOS_PROFILE_HPP_
#define RELAYQOS_PROFILE_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "relayqos/allocator.hpp"

namespace relayqos {

enum class Duplex { kFull, kHalf };

Duplex parse_duplex(std::string_view text);
std::string_view to_string(Duplex duplex);

// Physical description of a relay link in SI units. Field names double as the
// config-file keys and command-line override flags.
struct RadioProfile {
  double frame_duration = 2e-3;      // T_f [s]
  double bandwidth = 1e5;            // B [Hz]
  Duplex duplex = Duplex::kFull;
  double path_loss_exponent = 3.0;   // eta
  double reference_distance = 50.0;  // distance with unit mean gain [m]
  double d1 = 50.0;                  // source -> relay [m]
  double d2 = 50.0;                  // relay -> destination [m]
  double traffic_load = 1e5;         // [bit/s]
  double delay_bound = 0.1;          // [s]
  double violation_prob = 1e-6;
  // Per-hop transmission time T [s]. When unset it follows the duplex mode:
  // full duplex T = T_f / 2, half duplex T = T_f.
  std::optional<double> transmission_time;

  double transmission_time_or_default() const;
};

// Throws ConfigError on any violated invariant (non-positive quantities,
// eta outside [2, 6], delay bound shorter than one frame, ...).
void validate(const RadioProfile& profile);

double bits_per_second_to_nats_per_frame(double bits_per_second,
                                         double frame_duration);
double nats_per_frame_to_bits_per_second(double nats_per_frame,
                                         double frame_duration);

// (distance / reference)^-eta.
double path_loss_mean_gain(double distance, double reference_distance,
                           double path_loss_exponent);

// round(delay_bound / frame_duration); throws ConfigError below one frame.
double delay_bound_frames(const RadioProfile& profile);

Scenario to_scenario(const RadioProfile& profile);

// Assigns one field by its key name from a textual value. Throws ConfigError
// for unknown keys or unparsable values.
void set_profile_field(RadioProfile& profile, std::string_view key,
                       std::string_view value);

// JSON object whose keys are RadioProfile field names; absent keys keep
// their defaults. Throws ConfigError.
RadioProfile parse_profile_json(std::string_view text,
                                RadioProfile base = {});
RadioProfile load_profile(const std::filesystem::path& path,
                          RadioProfile base = {});

// The keys accepted by set_profile_field() and parse_profile_json().
std::span<const std::string_view> profile_keys();

}  // namespace relayqos

#endif  // RELAYQOS_PROFILE_HPP_
