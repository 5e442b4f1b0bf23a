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

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace relayqos {
namespace {

constexpr double kLn2 = 0.69314718055994530941723212145817657;

constexpr std::array<std::string_view, 11> kKeys = {
    "frame_duration",     "bandwidth",          "duplex",
    "path_loss_exponent", "reference_distance", "d1",
    "d2",                 "traffic_load",       "delay_bound",
    "violation_prob",     "transmission_time"};

double ParseNumber(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  }
  return value;
}

void RequirePositive(std::string_view key, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(fmt::format("{} must be positive, got {}", key, value));
  }
}

}  // namespace

Duplex parse_duplex(std::string_view text) {
  if (text == "full") return Duplex::kFull;
  if (text == "half") return Duplex::kHalf;
  throw ConfigError(
      fmt::format("duplex must be 'full' or 'half', got '{}'", text));
}

std::string_view to_string(Duplex duplex) {
  return duplex == Duplex::kFull ? "full" : "half";
}

double RadioProfile::transmission_time_or_default() const {
  if (transmission_time) return *transmission_time;
  return duplex == Duplex::kFull ? 0.5 * frame_duration : frame_duration;
}

void validate(const RadioProfile& p) {
  RequirePositive("frame_duration", p.frame_duration);
  RequirePositive("bandwidth", p.bandwidth);
  RequirePositive("reference_distance", p.reference_distance);
  RequirePositive("d1", p.d1);
  RequirePositive("d2", p.d2);
  RequirePositive("traffic_load", p.traffic_load);
  RequirePositive("delay_bound", p.delay_bound);
  if (p.transmission_time) {
    RequirePositive("transmission_time", *p.transmission_time);
  }
  if (!(p.path_loss_exponent >= 2.0 && p.path_loss_exponent <= 6.0)) {
    throw ConfigError(fmt::format(
        "path_loss_exponent must lie in [2, 6], got {}", p.path_loss_exponent));
  }
  if (!(p.violation_prob > 0.0 && p.violation_prob < 1.0)) {
    throw ConfigError(fmt::format(
        "violation_prob must lie in (0, 1), got {}", p.violation_prob));
  }
  delay_bound_frames(p);
}

double bits_per_second_to_nats_per_frame(double bits_per_second,
                                         double frame_duration) {
  return bits_per_second * kLn2 * frame_duration;
}

double nats_per_frame_to_bits_per_second(double nats_per_frame,
                                         double frame_duration) {
  return nats_per_frame / (kLn2 * frame_duration);
}

double path_loss_mean_gain(double distance, double reference_distance,
                           double path_loss_exponent) {
  return std::pow(distance / reference_distance, -path_loss_exponent);
}

double delay_bound_frames(const RadioProfile& p) {
  const double frames = p.delay_bound / p.frame_duration;
  // Sub-frame bounds are unsupported; allow for rounding in the ratio.
  if (!(frames >= 1.0 - 1e-9)) {
    throw ConfigError(fmt::format(
        "delay_bound {} s is shorter than one frame ({} s)", p.delay_bound,
        p.frame_duration));
  }
  return std::round(frames);
}

Scenario to_scenario(const RadioProfile& p) {
  validate(p);
  return Scenario{
      .traffic_load =
          bits_per_second_to_nats_per_frame(p.traffic_load, p.frame_duration),
      .delay_bound = delay_bound_frames(p),
      .violation_prob = p.violation_prob,
      .hop1_mean_gain =
          path_loss_mean_gain(p.d1, p.reference_distance, p.path_loss_exponent),
      .hop2_mean_gain =
          path_loss_mean_gain(p.d2, p.reference_distance, p.path_loss_exponent),
      .bt_product = p.bandwidth * p.transmission_time_or_default(),
  };
}

void set_profile_field(RadioProfile& p, std::string_view key,
                       std::string_view value) {
  if (key == "duplex") {
    p.duplex = parse_duplex(value);
  } else if (key == "transmission_time") {
    if (value.empty() || value == "auto") {
      p.transmission_time.reset();
    } else {
      p.transmission_time = ParseNumber(key, value);
    }
  } else {
    const double number = ParseNumber(key, value);
    if (key == "frame_duration") {
      p.frame_duration = number;
    } else if (key == "bandwidth") {
      p.bandwidth = number;
    } else if (key == "path_loss_exponent") {
      p.path_loss_exponent = number;
    } else if (key == "reference_distance") {
      p.reference_distance = number;
    } else if (key == "d1") {
      p.d1 = number;
    } else if (key == "d2") {
      p.d2 = number;
    } else if (key == "traffic_load") {
      p.traffic_load = number;
    } else if (key == "delay_bound") {
      p.delay_bound = number;
    } else if (key == "violation_prob") {
      p.violation_prob = number;
    } else {
      throw ConfigError(fmt::format("unknown profile key '{}'", key));
    }
  }
}

RadioProfile parse_profile_json(std::string_view text, RadioProfile base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      set_profile_field(base, key, value.get<std::string>());
    } else if (value.is_number()) {
      // Round-trips exactly through the shortest decimal representation.
      set_profile_field(base, key, fmt::format("{}", value.get<double>()));
    } else if (value.is_null() && key == "transmission_time") {
      base.transmission_time.reset();
    } else {
      throw ConfigError(fmt::format("{}: unsupported value {}", key,
                                    value.dump()));
    }
  }
  return base;
}

RadioProfile load_profile(const std::filesystem::path& path,
                          RadioProfile base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_profile_json(text.str(), base);
}

std::span<const std::string_view> profile_keys() { return kKeys; }

}  // namespace relayqos
