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

// relayqos command-line front end: allocate, sweep, validate, ccdf.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "relayqos/allocator.hpp"
#include "relayqos/errors.hpp"
#include "relayqos/experiment.hpp"
#include "relayqos/profile.hpp"
#include "relayqos/qsim.hpp"

namespace {

using namespace relayqos;

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kInvalidConfig = 2,
  kInstability = 3,
};

struct ProfileArgs {
  std::string config;
  std::map<std::string, std::string> overrides;
};

void AddProfileOptions(CLI::App* app, ProfileArgs& args) {
  app->add_option("--config", args.config, "JSON profile (keys = field names)");
  for (std::string_view key : profile_keys()) {
    const std::string name(key);
    app->add_option_function<std::string>(
        "--" + name,
        [&args, name](const std::string& value) {
          args.overrides[name] = value;
        },
        "override " + name);
  }
}

RadioProfile ResolveProfile(const ProfileArgs& args) {
  RadioProfile profile;
  if (!args.config.empty()) profile = load_profile(args.config);
  for (const auto& [key, value] : args.overrides) {
    set_profile_field(profile, key, value);
  }
  validate(profile);
  return profile;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ConfigError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void WriteAllocation(std::ostream& out, const Scenario& s,
                     const Allocation& a) {
  const auto line = [&out](std::string_view key, double value) {
    fmt::print(out, "{},{:.10g}\n", key, value);
  };
  out << "key,value\n";
  line("traffic_load_nats_per_frame", s.traffic_load);
  line("delay_bound_frames", s.delay_bound);
  line("violation_prob", s.violation_prob);
  line("hop1_mean_gain", s.hop1_mean_gain);
  line("hop2_mean_gain", s.hop2_mean_gain);
  line("bt_product", s.bt_product);
  line("kappa1", a.kappa1);
  line("kappa2", a.kappa2);
  line("total_power", a.total_power());
  line("kappa1_db", to_db(a.kappa1));
  line("kappa2_db", to_db(a.kappa2));
  line("total_power_db", to_db(a.total_power()));
  line("theta1", a.theta1);
  line("theta2", a.theta2);
  line("delay_rate", a.delay_rate);
  line("max_residual", a.residuals.max());
}

int RunAllocate(const ProfileArgs& args, const std::string& out_path) {
  const Scenario scenario = to_scenario(ResolveProfile(args));
  const Allocation allocation = allocate(scenario);
  Output out(out_path);
  WriteAllocation(out.stream(), scenario, allocation);
  return kOk;
}

int RunSweep(const ProfileArgs& args, const std::string& axis_text,
             const std::string& grid_text, unsigned threads,
             const std::string& out_path) {
  const RadioProfile profile = ResolveProfile(args);
  const SweepAxis axis = parse_axis(axis_text);
  const std::vector<double> grid = parse_grid(grid_text);
  const auto rows = sweep(profile, axis, grid, {}, threads);
  Output out(out_path);
  write_sweep_csv(out.stream(), axis, rows);
  return kOk;
}

int RunValidate(const ProfileArgs& args, const SimConfig& sim,
                const std::string& out_path, const std::string& samples_path) {
  const Scenario scenario = to_scenario(ResolveProfile(args));
  const ValidationReport report = run_validation(scenario, sim);
  Output out(out_path);
  write_report(out.stream(), report);
  if (!samples_path.empty()) {
    // Raw dump goes through a second simulation pass with the same seed.
    const DelayStats stats =
        simulate_tandem(scenario, report.allocation, sim, nullptr);
    std::ofstream dump(samples_path, std::ios::binary);
    if (!dump) throw ConfigError("cannot open samples file " + samples_path);
    write_samples(dump, stats.e2e_delays);
  }
  return kOk;
}

int RunCcdf(const ProfileArgs& args, const std::string& grid_text,
            const std::string& out_path) {
  const Scenario scenario = to_scenario(ResolveProfile(args));
  const Allocation allocation = allocate(scenario);
  const std::vector<double> xs = parse_grid(
      grid_text.empty() ? fmt::format("0:{}:{}", 4 * scenario.delay_bound,
                                      4 * static_cast<int>(scenario.delay_bound) + 1)
                        : grid_text);
  Output out(out_path);
  write_ccdf_csv(out.stream(), analytic_ccdf_curve(allocation, scenario, xs));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relayqos: QoS-driven power allocation for a two-hop relay link"};
  app.require_subcommand(1);

  ProfileArgs profile_args;
  std::string out_path;
  std::string axis = "traffic_load";
  std::string grid;
  unsigned threads = 0;
  SimConfig sim;
  std::string forwarding = "store-and-forward";
  std::string samples_path;

  auto* allocate_cmd =
      app.add_subcommand("allocate", "minimum-power allocation for one profile");
  auto* sweep_cmd =
      app.add_subcommand("sweep", "allocation table along one profile axis");
  auto* validate_cmd = app.add_subcommand(
      "validate", "simulate the allocated tandem and compare with the model");
  auto* ccdf_cmd =
      app.add_subcommand("ccdf", "analytic delay CCDF of the allocation");

  for (CLI::App* cmd : {allocate_cmd, sweep_cmd, validate_cmd, ccdf_cmd}) {
    AddProfileOptions(cmd, profile_args);
    cmd->add_option("--out", out_path, "output file (default stdout)");
  }
  sweep_cmd->add_option("--axis", axis, "traffic_load|delay_bound|violation_prob|d1")
      ->capture_default_str();
  sweep_cmd->add_option("--grid", grid, "lo:hi:n[:log] in SI units")->required();
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  validate_cmd->add_option("--frames", sim.n_frames)->capture_default_str();
  validate_cmd->add_option("--warmup", sim.warmup_frames)->capture_default_str();
  validate_cmd->add_option("--seed", sim.seed)->capture_default_str();
  validate_cmd
      ->add_option("--forwarding", forwarding,
                   "store-and-forward|cut-through")
      ->capture_default_str();
  validate_cmd->add_option("--samples-out", samples_path,
                           "dump end-to-end delay samples, one per line");
  ccdf_cmd->add_option("--grid", grid, "delay grid lo:hi:n in frames");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*allocate_cmd) return RunAllocate(profile_args, out_path);
    if (*sweep_cmd) return RunSweep(profile_args, axis, grid, threads, out_path);
    if (*validate_cmd) {
      if (forwarding == "store-and-forward") {
        sim.forwarding = RelayForwarding::kStoreAndForward;
      } else if (forwarding == "cut-through") {
        sim.forwarding = RelayForwarding::kCutThrough;
      } else {
        throw ConfigError("unknown forwarding mode: " + forwarding);
      }
      return RunValidate(profile_args, sim, out_path, samples_path);
    }
    if (*ccdf_cmd) return RunCcdf(profile_args, grid, out_path);
  } catch (const AllocationError& e) {
    fmt::print(stderr, "infeasible: {}\n", e.what());
    return kInfeasible;
  } catch (const InfeasibleError& e) {
    fmt::print(stderr, "infeasible: {}\n", e.what());
    return kInfeasible;
  } catch (const InstabilityError& e) {
    fmt::print(stderr, "unstable: {}\n", e.what());
    return kInstability;
  } catch (const Error& e) {
    fmt::print(stderr, "invalid configuration: {}\n", e.what());
    return kInvalidConfig;
  }
  return kOk;
}
