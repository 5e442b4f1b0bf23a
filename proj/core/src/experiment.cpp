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

#include "relayqos/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "relayqos/delaymodel.hpp"
#include "relayqos/effcap.hpp"

namespace relayqos {
namespace {

double ParseGridNumber(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("bad grid '{}': '{}' is not a number", spec,
                                  text));
  }
  return value;
}

double Mean(std::span<const std::uint32_t> samples) {
  if (samples.empty()) return 0.0;
  const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
  return sum / static_cast<double>(samples.size());
}

// Formats doubles identically on every run.
std::string Num(double v) { return fmt::format("{:.10g}", v); }

std::string OptionalNum(const std::optional<double>& v) {
  return v ? Num(*v) : std::string("nan");
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
  if (text == "traffic_load") return SweepAxis::kTrafficLoad;
  if (text == "delay_bound") return SweepAxis::kDelayBound;
  if (text == "violation_prob") return SweepAxis::kViolationProb;
  if (text == "d1") return SweepAxis::kD1;
  throw ConfigError(fmt::format(
      "axis must be one of traffic_load, delay_bound, violation_prob, d1; "
      "got '{}'",
      text));
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTrafficLoad:
      return "traffic_load";
    case SweepAxis::kDelayBound:
      return "delay_bound";
    case SweepAxis::kViolationProb:
      return "violation_prob";
    case SweepAxis::kD1:
      return "d1";
  }
  return "unknown";
}

RadioProfile with_axis_value(RadioProfile profile, SweepAxis axis,
                             double value) {
  switch (axis) {
    case SweepAxis::kTrafficLoad:
      profile.traffic_load = value;
      break;
    case SweepAxis::kDelayBound:
      profile.delay_bound = value;
      break;
    case SweepAxis::kViolationProb:
      profile.violation_prob = value;
      break;
    case SweepAxis::kD1: {
      const double total = profile.d1 + profile.d2;
      profile.d1 = value;
      profile.d2 = total - value;
      break;
    }
  }
  return profile;
}

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const bool log_scale = parts.size() == 4 && parts[3] == "log";
  if (parts.size() != 3 && !log_scale) {
    throw ConfigError(
        fmt::format("grid must be lo:hi:n or lo:hi:n:log, got '{}'", spec));
  }
  const double lo = ParseGridNumber(parts[0], spec);
  const double hi = ParseGridNumber(parts[1], spec);
  const double count = ParseGridNumber(parts[2], spec);
  if (!(count >= 1.0) || count != std::floor(count)) {
    throw ConfigError(fmt::format("grid '{}': n must be a positive integer",
                                  spec));
  }
  if (log_scale && !(lo > 0.0 && hi > 0.0)) {
    throw ConfigError(
        fmt::format("grid '{}': log spacing needs positive ends", spec));
  }
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    grid[i] = log_scale ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))
                        : lo + f * (hi - lo);
  }
  if (n > 1) {
    grid.front() = lo;
    grid.back() = hi;
  }
  return grid;
}

std::vector<SweepRow> sweep(const RadioProfile& profile, SweepAxis axis,
                            std::span<const double> grid,
                            const SolverOptions& options, unsigned threads) {
  std::vector<SweepRow> rows(grid.size());
  const auto solve_point = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.axis_value = grid[i];
    try {
      const Scenario scenario =
          to_scenario(with_axis_value(profile, axis, grid[i]));
      row.allocation = allocate(scenario, options);
    } catch (const Error& e) {
      row.error = e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) solve_point(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
          solve_point(i);
        }
      });
    }
  }
  return rows;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

void write_sweep_csv(std::ostream& out, SweepAxis axis,
                     std::span<const SweepRow> rows) {
  fmt::print(out,
             "{},kappa1,kappa2,total_power,kappa1_db,kappa2_db,total_power_db,"
             "theta1,theta2,delay_rate,max_residual,feasible,error\n",
             to_string(axis));
  for (const SweepRow& row : rows) {
    if (row.allocation) {
      const Allocation& a = *row.allocation;
      fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},1,\n",
                 Num(row.axis_value), Num(a.kappa1), Num(a.kappa2),
                 Num(a.total_power()), Num(to_db(a.kappa1)),
                 Num(to_db(a.kappa2)), Num(to_db(a.total_power())),
                 Num(a.theta1), Num(a.theta2), Num(a.delay_rate),
                 Num(a.residuals.max()));
    } else {
      std::string message = row.error;
      std::replace(message.begin(), message.end(), ',', ';');
      std::replace(message.begin(), message.end(), '\n', ' ');
      fmt::print(out, "{},nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,0,{}\n",
                 Num(row.axis_value), message);
    }
  }
}

std::optional<std::pair<int, int>> tail_fit_range(
    std::span<const std::uint32_t> samples, std::uint64_t min_episodes) {
  if (samples.empty()) return std::nullopt;
  const std::uint32_t max_sample =
      *std::max_element(samples.begin(), samples.end());
  // A sample starts a new excursion above every x in [previous, current).
  std::vector<std::int64_t> starts(max_sample + 2, 0);
  std::uint32_t previous = 0;
  for (std::uint32_t s : samples) {
    if (s > previous) {
      starts[previous] += 1;
      starts[s] -= 1;
    }
    previous = s;
  }
  int x_hi = -1;
  std::int64_t episodes = 0;
  for (std::uint32_t x = 0; x <= max_sample; ++x) {
    episodes += starts[x];
    if (episodes >= static_cast<std::int64_t>(min_episodes)) {
      x_hi = static_cast<int>(x);
    }
  }
  const int x_lo = x_hi / 2;
  if (x_hi < 1 || x_hi - x_lo < 1) return std::nullopt;
  return std::pair{x_lo, x_hi};
}

ValidationReport run_validation(const RadioProfile& profile,
                                const SimConfig& sim,
                                const SolverOptions& options) {
  return run_validation(to_scenario(profile), sim, options);
}

ValidationReport run_validation(const Scenario& scenario, const SimConfig& sim,
                                const SolverOptions& options) {
  validate(sim);
  ValidationReport report;
  report.scenario = scenario;
  report.allocation = allocate(scenario, options);
  report.sim = sim;
  const Allocation& a = report.allocation;
  const LinkModel hop1{a.kappa1, scenario.hop1_mean_gain, scenario.bt_product};
  const LinkModel hop2{a.kappa2, scenario.hop2_mean_gain, scenario.bt_product};
  report.hop1_rate = a.theta1 * effective_capacity_rayleigh({a.theta1}, hop1);
  report.hop2_rate = a.theta2 * effective_capacity_rayleigh({a.theta2}, hop2);
  report.analytic_violation = two_hop_ccdf(
      {report.hop1_rate}, {report.hop2_rate}, scenario.delay_bound);

  const DelayStats stats = simulate_tandem(scenario, a, sim);
  report.samples = stats.size();
  report.empirical_violation =
      empirical_ccdf(stats.e2e_delays, scenario.delay_bound);
  report.violation_ratio =
      report.empirical_violation.probability / report.analytic_violation;
  report.mean_hop1_delay = Mean(stats.hop1_delays);
  report.mean_hop2_delay = Mean(stats.hop2_delays);
  report.mean_e2e_delay = Mean(stats.e2e_delays);

  const auto fit = [](std::span<const std::uint32_t> samples,
                      std::optional<double>& slope, int& lo, int& hi) {
    const auto range = tail_fit_range(samples);
    if (!range) return;
    lo = range->first;
    hi = range->second;
    try {
      slope = tail_slope(samples, lo, hi);
    } catch (const InsufficientDataError&) {
      slope.reset();
    }
  };
  fit(stats.hop1_delays, report.hop1_slope, report.hop1_fit_lo,
      report.hop1_fit_hi);
  fit(stats.hop2_delays, report.hop2_slope, report.hop2_fit_lo,
      report.hop2_fit_hi);
  fit(stats.e2e_delays, report.e2e_slope, report.e2e_fit_lo,
      report.e2e_fit_hi);
  return report;
}

void write_report(std::ostream& out, const ValidationReport& r) {
  const Scenario& s = r.scenario;
  const Allocation& a = r.allocation;
  const auto line = [&out](std::string_view key, const std::string& value) {
    fmt::print(out, "{},{}\n", key, value);
  };
  line("key", "value");
  line("traffic_load_nats_per_frame", Num(s.traffic_load));
  line("delay_bound_frames", Num(s.delay_bound));
  line("violation_prob", Num(s.violation_prob));
  line("hop1_mean_gain", Num(s.hop1_mean_gain));
  line("hop2_mean_gain", Num(s.hop2_mean_gain));
  line("bt_product", Num(s.bt_product));
  line("kappa1", Num(a.kappa1));
  line("kappa2", Num(a.kappa2));
  line("kappa1_db", Num(to_db(a.kappa1)));
  line("kappa2_db", Num(to_db(a.kappa2)));
  line("theta1", Num(a.theta1));
  line("theta2", Num(a.theta2));
  line("delay_rate", Num(a.delay_rate));
  line("residual_capacity_match", Num(a.residuals.capacity_match));
  line("residual_equal_exponent", Num(a.residuals.equal_exponent));
  line("residual_qos_bound", Num(a.residuals.qos_bound));
  line("residual_relay_balance", Num(a.residuals.relay_balance));
  line("frames", fmt::format("{}", r.sim.n_frames));
  line("warmup_frames", fmt::format("{}", r.sim.warmup_frames));
  line("seed", fmt::format("{}", r.sim.seed));
  line("forwarding", r.sim.forwarding == RelayForwarding::kCutThrough
                         ? "cut-through"
                         : "store-and-forward");
  line("samples", fmt::format("{}", r.samples));
  line("analytic_violation", Num(r.analytic_violation));
  line("empirical_violation", Num(r.empirical_violation.probability));
  line("empirical_violation_ci95", Num(r.empirical_violation.half_width));
  line("violation_ratio", Num(r.violation_ratio));
  line("hop1_rate_analytic", Num(r.hop1_rate));
  line("hop1_rate_fitted", OptionalNum(r.hop1_slope));
  line("hop1_fit_range", fmt::format("{}:{}", r.hop1_fit_lo, r.hop1_fit_hi));
  line("hop2_rate_analytic", Num(r.hop2_rate));
  line("hop2_rate_fitted", OptionalNum(r.hop2_slope));
  line("hop2_fit_range", fmt::format("{}:{}", r.hop2_fit_lo, r.hop2_fit_hi));
  line("e2e_rate_fitted", OptionalNum(r.e2e_slope));
  line("e2e_fit_range", fmt::format("{}:{}", r.e2e_fit_lo, r.e2e_fit_hi));
  line("mean_hop1_delay", Num(r.mean_hop1_delay));
  line("mean_hop2_delay", Num(r.mean_hop2_delay));
  line("mean_e2e_delay", Num(r.mean_e2e_delay));
}

std::vector<CcdfPoint> analytic_ccdf_curve(const Allocation& allocation,
                                           const Scenario& scenario,
                                           std::span<const double> xs) {
  const LinkModel hop1{allocation.kappa1, scenario.hop1_mean_gain,
                       scenario.bt_product};
  const LinkModel hop2{allocation.kappa2, scenario.hop2_mean_gain,
                       scenario.bt_product};
  const HopDelayLaw law1{allocation.theta1 *
                         effective_capacity_rayleigh({allocation.theta1}, hop1)};
  const HopDelayLaw law2{allocation.theta2 *
                         effective_capacity_rayleigh({allocation.theta2}, hop2)};
  std::vector<CcdfPoint> curve;
  curve.reserve(xs.size());
  for (double x : xs) {
    curve.push_back({x, single_hop_ccdf(law1, x), single_hop_ccdf(law2, x),
                     two_hop_ccdf(law1, law2, x)});
  }
  return curve;
}

void write_ccdf_csv(std::ostream& out, std::span<const CcdfPoint> curve) {
  fmt::print(out, "x_frames,hop1_ccdf,hop2_ccdf,two_hop_ccdf\n");
  for (const CcdfPoint& p : curve) {
    fmt::print(out, "{},{},{},{}\n", Num(p.x), Num(p.hop1), Num(p.hop2),
               Num(p.two_hop));
  }
}

}  // namespace relayqos
