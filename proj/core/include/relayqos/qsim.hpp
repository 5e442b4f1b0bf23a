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

#ifndef RELAYQOS_QSIM_HPP_
#define RELAYQOS_QSIM_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "relayqos/allocator.hpp"

namespace relayqos {

// When hop-1 departures become available to the relay queue.
enum class RelayForwarding {
  kStoreAndForward,  // next frame
  kCutThrough,       // same frame
};

struct SimConfig {
  std::uint64_t n_frames = 1'000'000;
  std::uint64_t warmup_frames = 10'000;
  std::uint64_t seed = 1;
  RelayForwarding forwarding = RelayForwarding::kStoreAndForward;
};

// Throws ConfigError unless n_frames > warmup_frames.
void validate(const SimConfig& cfg);

// Delay samples in whole frames, one per tagged bit (the last bit arriving in
// every post-warm-up frame), index-aligned across the three vectors.
struct DelayStats {
  std::vector<std::uint32_t> hop1_delays;
  std::vector<std::uint32_t> hop2_delays;
  std::vector<std::uint32_t> e2e_delays;
  std::uint64_t frames_simulated = 0;
  std::uint64_t dropped_warmup = 0;

  std::size_t size() const { return e2e_delays.size(); }
};

// Unbounded fluid FIFO that tracks the positions of tagged bits. Positions
// are kept relative to the start of the current busy period so that they
// never accumulate rounding error over long runs.
class FluidFifo {
 public:
  struct Tag {
    std::uint64_t id;
    double offset;  // position of the bit inside its batch, in (0, amount]
  };

  // Appends `amount` nats; `tags` locate marked bits inside this batch.
  void arrive(double amount, std::span<const Tag> tags = {});

  // Serves up to `capacity` nats. Marked bits that leave are appended to
  // `departed`, with offsets relative to this frame's departure batch.
  // Returns the amount served.
  double serve(double capacity, std::vector<Tag>& departed);

  double backlog() const { return backlog_; }
  std::size_t pending_tags() const { return pending_.size(); }

 private:
  struct Pending {
    std::uint64_t id;
    double position;
  };

  double backlog_ = 0.0;
  double served_ = 0.0;  // served since the queue last emptied
  std::deque<Pending> pending_;
};

// Per-frame flows, reported to an optional observer of simulate_tandem().
struct FrameRecord {
  std::uint64_t frame;
  double source_arrivals;
  double hop1_departures;
  double hop2_arrivals;
  double hop2_departures;
  double hop1_backlog;
  double hop2_backlog;
};

using FrameObserver = std::function<void(const FrameRecord&)>;

// Frame-by-frame simulation of the source and relay queues: constant arrivals
// of scenario.traffic_load, Rayleigh block fading drawn independently per
// frame and hop, Shannon-rate service with the allocated powers. Arrivals are
// credited before service. Tagged bits still queued when n_frames is reached
// are followed to delivery (with untagged traffic continuing), so every
// post-warm-up frame yields one sample. Deterministic in cfg.seed.
//
// Throws InstabilityError if either hop's mean service rate does not exceed
// the traffic load.
DelayStats simulate_tandem(const Scenario& scenario,
                           const Allocation& allocation, const SimConfig& cfg,
                           const FrameObserver& observer = {});

struct CcdfEstimate {
  double probability;
  double half_width;  // 95% normal-approximation confidence half-width
};

// Fraction of samples strictly greater than x. Throws InsufficientDataError
// on empty input.
CcdfEstimate empirical_ccdf(std::span<const std::uint32_t> samples, double x);

// Least-squares slope of -log(empirical CCDF) over the integers in
// [x_lo, x_hi]: an estimate of the exponential tail rate. Throws
// InsufficientDataError when fewer than `min_exceedances` samples exceed x_hi
// or the CCDF does not decay over the range.
double tail_slope(std::span<const std::uint32_t> samples, int x_lo, int x_hi,
                  std::uint64_t min_exceedances = 100);

// One sample per line.
void write_samples(std::ostream& out, std::span<const std::uint32_t> samples);

}  // namespace relayqos

#endif  // RELAYQOS_QSIM_HPP_
