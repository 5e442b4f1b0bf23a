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

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <fmt/core.h>

#include "relayqos/effcap.hpp"

namespace relayqos {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Exponential channel gains for one hop, one independent stream per
// (seed, stream) pair. Uses the portable mt19937_64 engine and an explicit
// 53-bit uniform so results do not depend on the standard library.
class GainStream {
 public:
  GainStream(std::uint64_t seed, std::uint64_t stream, double mean)
      : engine_(SplitMix64(seed ^ SplitMix64(stream))), mean_(mean) {}

  double next() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return -mean_ * std::log1p(-u);
  }

 private:
  std::mt19937_64 engine_;
  double mean_;
};

std::uint32_t FrameDelta(std::uint64_t later, std::uint64_t earlier) {
  return static_cast<std::uint32_t>(later - earlier);
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n_frames <= cfg.warmup_frames) {
    throw ConfigError(fmt::format(
        "n_frames ({}) must exceed warmup_frames ({})", cfg.n_frames,
        cfg.warmup_frames));
  }
  if (cfg.n_frames - cfg.warmup_frames >
      std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("too many recorded frames for 32-bit sample indices");
  }
}

void FluidFifo::arrive(double amount, std::span<const Tag> tags) {
  for (const Tag& tag : tags) {
    pending_.push_back({tag.id, served_ + backlog_ + tag.offset});
  }
  backlog_ += amount;
}

double FluidFifo::serve(double capacity, std::vector<Tag>& departed) {
  if (capacity >= backlog_) {
    const double amount = backlog_;
    for (const Pending& p : pending_) {
      departed.push_back({p.id, std::clamp(p.position - served_, 0.0, amount)});
    }
    pending_.clear();
    backlog_ = 0.0;
    served_ = 0.0;
    return amount;
  }
  const double served_after = served_ + capacity;
  while (!pending_.empty() && pending_.front().position <= served_after) {
    const Pending& p = pending_.front();
    departed.push_back({p.id, std::clamp(p.position - served_, 0.0, capacity)});
    pending_.pop_front();
  }
  backlog_ -= capacity;
  served_ = served_after;
  return capacity;
}

DelayStats simulate_tandem(const Scenario& scenario,
                           const Allocation& allocation, const SimConfig& cfg,
                           const FrameObserver& observer) {
  validate(cfg);
  const double load = scenario.traffic_load;
  if (!(load >= 0.0) || !std::isfinite(load)) {
    throw ConfigError(fmt::format("traffic load must be >= 0, got {}", load));
  }

  DelayStats stats;
  stats.frames_simulated = cfg.n_frames;
  stats.dropped_warmup = cfg.warmup_frames;
  if (load == 0.0) return stats;

  const LinkModel hop1{allocation.kappa1, scenario.hop1_mean_gain,
                       scenario.bt_product};
  const LinkModel hop2{allocation.kappa2, scenario.hop2_mean_gain,
                       scenario.bt_product};
  for (const auto& [name, link] : {std::pair{"source", hop1},
                                   std::pair{"relay", hop2}}) {
    const double mean_service = ergodic_rate(link);
    if (!(mean_service > load)) {
      throw InstabilityError(fmt::format(
          "{} queue is unstable: mean service {} <= load {} nats/frame", name,
          mean_service, load));
    }
  }

  const std::uint64_t recorded = cfg.n_frames - cfg.warmup_frames;
  stats.hop1_delays.assign(recorded, 0);
  stats.hop2_delays.assign(recorded, 0);
  stats.e2e_delays.assign(recorded, 0);

  GainStream gains1(cfg.seed, 1, scenario.hop1_mean_gain);
  GainStream gains2(cfg.seed, 2, scenario.hop2_mean_gain);
  const double bt = scenario.bt_product;
  const bool cut_through = cfg.forwarding == RelayForwarding::kCutThrough;

  FluidFifo source;
  FluidFifo relay;
  std::vector<FluidFifo::Tag> hop1_out;
  std::vector<FluidFifo::Tag> hop2_out;
  std::vector<FluidFifo::Tag> relay_in;
  double relay_in_amount = 0.0;
  std::uint64_t outstanding = 0;

  // Frames past n_frames keep running only to deliver outstanding tags.
  const std::uint64_t frame_limit = cfg.n_frames + 100 * cfg.n_frames + 1'000'000;
  for (std::uint64_t t = 0; t < cfg.n_frames || outstanding > 0; ++t) {
    if (t >= frame_limit) {
      throw InstabilityError(fmt::format(
          "{} tagged bits still queued after {} frames", outstanding, t));
    }
    const FluidFifo::Tag last_bit{t - cfg.warmup_frames, load};
    const bool tagged = t >= cfg.warmup_frames && t < cfg.n_frames;
    source.arrive(load, tagged ? std::span(&last_bit, 1)
                               : std::span<const FluidFifo::Tag>{});
    outstanding += tagged ? 1 : 0;

    const double s1 = bt * std::log1p(allocation.kappa1 * gains1.next());
    const double s2 = bt * std::log1p(allocation.kappa2 * gains2.next());

    hop1_out.clear();
    const double hop1_departed = source.serve(s1, hop1_out);
    for (const auto& tag : hop1_out) {
      stats.hop1_delays[tag.id] = FrameDelta(t, tag.id + cfg.warmup_frames);
    }

    // Store-and-forward releases the previous frame's departures now.
    double hop2_arrived;
    if (cut_through) {
      hop2_arrived = hop1_departed;
      relay.arrive(hop1_departed, hop1_out);
    } else {
      hop2_arrived = relay_in_amount;
      relay.arrive(relay_in_amount, relay_in);
      relay_in.swap(hop1_out);
      relay_in_amount = hop1_departed;
    }

    hop2_out.clear();
    const double hop2_departed = relay.serve(s2, hop2_out);
    for (const auto& tag : hop2_out) {
      const std::uint64_t born = tag.id + cfg.warmup_frames;
      const std::uint64_t relayed =
          born + stats.hop1_delays[tag.id] + (cut_through ? 0 : 1);
      stats.hop2_delays[tag.id] = FrameDelta(t, relayed);
      stats.e2e_delays[tag.id] = FrameDelta(t, born);
      --outstanding;
    }

    if (observer) {
      observer({t, load, hop1_departed, hop2_arrived, hop2_departed,
                source.backlog(), relay.backlog()});
    }
  }
  return stats;
}

CcdfEstimate empirical_ccdf(std::span<const std::uint32_t> samples, double x) {
  if (samples.empty()) {
    throw InsufficientDataError("empirical_ccdf: no samples");
  }
  const auto above = std::count_if(samples.begin(), samples.end(),
                                   [x](std::uint32_t s) { return s > x; });
  const double n = static_cast<double>(samples.size());
  const double p = static_cast<double>(above) / n;
  return {p, 1.959963984540054 * std::sqrt(p * (1.0 - p) / n)};
}

double tail_slope(std::span<const std::uint32_t> samples, int x_lo, int x_hi,
                  std::uint64_t min_exceedances) {
  if (x_lo < 0 || x_hi <= x_lo) {
    throw DomainError(fmt::format(
        "tail_slope: need 0 <= x_lo < x_hi, got [{}, {}]", x_lo, x_hi));
  }
  if (samples.empty()) throw InsufficientDataError("tail_slope: no samples");

  // histogram[k] = #samples equal to x_lo + k, last bin collecting > x_hi.
  const auto width = static_cast<std::size_t>(x_hi - x_lo) + 2;
  std::vector<std::uint64_t> histogram(width, 0);
  for (std::uint32_t s : samples) {
    if (s >= static_cast<std::uint32_t>(x_lo)) {
      histogram[std::min<std::size_t>(s - x_lo, width - 1)]++;
    }
  }
  std::vector<std::uint64_t> exceed(width - 1);  // #samples > x_lo + k
  std::uint64_t running = histogram[width - 1];
  for (std::size_t k = width - 1; k-- > 0;) {
    exceed[k] = running;
    running += histogram[k];
  }
  if (exceed.back() < min_exceedances) {
    throw InsufficientDataError(fmt::format(
        "tail_slope: only {} samples exceed x_hi = {} (need {})",
        exceed.back(), x_hi, min_exceedances));
  }
  if (exceed.front() == exceed.back()) {
    throw InsufficientDataError(
        fmt::format("tail_slope: CCDF is flat over [{}, {}]", x_lo, x_hi));
  }

  const double n = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(exceed.size());
  for (std::size_t k = 0; k < exceed.size(); ++k) {
    const double x = x_lo + static_cast<double>(k);
    const double y = -std::log(static_cast<double>(exceed[k]) / n);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void write_samples(std::ostream& out, std::span<const std::uint32_t> samples) {
  for (std::uint32_t s : samples) out << s << '\n';
}

}  // namespace relayqos
