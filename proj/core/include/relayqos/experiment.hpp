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

#ifndef RELAYQOS_EXPERIMENT_HPP_
#define RELAYQOS_EXPERIMENT_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relayqos/allocator.hpp"
#include "relayqos/profile.hpp"
#include "relayqos/qsim.hpp"

namespace relayqos {

enum class SweepAxis { kTrafficLoad, kDelayBound, kViolationProb, kD1 };

SweepAxis parse_axis(std::string_view text);
std::string_view to_string(SweepAxis axis);

// `profile` with the axis quantity replaced by `value` (SI units; a d1 value
// keeps d1 + d2 fixed).
RadioProfile with_axis_value(RadioProfile profile, SweepAxis axis,
                             double value);

// "lo:hi:n" for n evenly spaced points, "lo:hi:n:log" for log spacing.
std::vector<double> parse_grid(std::string_view spec);

struct SweepRow {
  double axis_value;
  std::optional<Allocation> allocation;  // empty when the point failed
  std::string error;

  bool feasible() const { return allocation.has_value(); }
};

// Solves every grid point (concurrently when `threads` != 1; 0 picks the
// hardware concurrency). Rows come back in grid order; per-point failures
// are recorded in the row instead of thrown.
std::vector<SweepRow> sweep(const RadioProfile& profile, SweepAxis axis,
                            std::span<const double> grid,
                            const SolverOptions& options = {},
                            unsigned threads = 0);

void write_sweep_csv(std::ostream& out, SweepAxis axis,
                     std::span<const SweepRow> rows);

// Power in dB relative to unit (noise-normalised) power.
double to_db(double linear);

struct ValidationReport {
  Scenario scenario;
  Allocation allocation;
  SimConfig sim;
  std::uint64_t samples = 0;
  double analytic_violation = 0.0;  // two_hop_ccdf at the delay bound
  CcdfEstimate empirical_violation{0.0, 0.0};
  double violation_ratio = 0.0;     // empirical / analytic
  double hop1_rate = 0.0;           // theta1 C_SR(theta1)
  double hop2_rate = 0.0;           // theta2 C_RD(theta2)
  std::optional<double> hop1_slope;  // fitted tail rates, empty if unfit
  std::optional<double> hop2_slope;
  std::optional<double> e2e_slope;
  int hop1_fit_lo = 0, hop1_fit_hi = 0;
  int hop2_fit_lo = 0, hop2_fit_hi = 0;
  int e2e_fit_lo = 0, e2e_fit_hi = 0;
  double mean_hop1_delay = 0.0;
  double mean_hop2_delay = 0.0;
  double mean_e2e_delay = 0.0;
};

// Automatic tail-fit range for tail_slope(). Consecutive delay samples are
// strongly correlated inside a busy period, so exceedances are counted as
// excursions (maximal runs of samples above x): x_hi is the largest delay
// with at least `min_episodes` excursions above it, x_lo = x_hi / 2. Empty
// when the samples do not support a range of at least two points.
std::optional<std::pair<int, int>> tail_fit_range(
    std::span<const std::uint32_t> samples, std::uint64_t min_episodes = 200);

// Allocates for the profile, simulates the tandem with that allocation, and
// compares analytic and empirical delay statistics. Propagates
// AllocationError, ConfigError and InstabilityError.
ValidationReport run_validation(const RadioProfile& profile,
                                const SimConfig& sim,
                                const SolverOptions& options = {});
ValidationReport run_validation(const Scenario& scenario, const SimConfig& sim,
                                const SolverOptions& options = {});

// key,value lines with fixed formatting: identical inputs give identical bytes.
void write_report(std::ostream& out, const ValidationReport& report);

struct CcdfPoint {
  double x;        // frames
  double hop1;     // Pr{D1 > x}
  double hop2;     // Pr{D2 > x}
  double two_hop;  // Pr{D1 + D2 > x}
};

std::vector<CcdfPoint> analytic_ccdf_curve(const Allocation& allocation,
                                           const Scenario& scenario,
                                           std::span<const double> xs);

void write_ccdf_csv(std::ostream& out, std::span<const CcdfPoint> curve);

}  // namespace relayqos

#endif  // RELAYQOS_EXPERIMENT_HPP_
