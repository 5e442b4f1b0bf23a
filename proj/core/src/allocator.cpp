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

#include "relayqos/allocator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "relayqos/bracket.hpp"
#include "relayqos/effcap.hpp"
#include "relayqos/specfun.hpp"

namespace relayqos {
namespace {

constexpr double kBracketGrowth = 10.0;
constexpr double kSmallestPower = 1e-300;

// The power kappa with C(theta, kappa * mean_gain) == target. C is strictly
// increasing in kappa, so a sign change bracket is grown geometrically and
// refined in log(kappa).
double SolvePowerForCapacity(double theta, double mean_gain, double bt,
                             double target, const SolverOptions& options,
                             const char* what) {
  const auto gap = [&](double log_kappa) {
    const LinkModel link{std::exp(log_kappa), mean_gain, bt};
    return effective_capacity_rayleigh({theta}, link) - target;
  };

  double lo = std::min(options.kappa_bracket_lo, options.kappa_ceiling);
  double hi = std::min(options.kappa_bracket_hi, options.kappa_ceiling);
  double f_hi = gap(std::log(hi));
  double f_lo = f_hi;
  bool have_lo = false;
  while (f_hi < 0.0) {
    if (hi >= options.kappa_ceiling) {
      throw InfeasibleError(fmt::format(
          "{}: capacity {} nats/frame at the power ceiling {} is below the "
          "required {} nats/frame",
          what, f_hi + target, options.kappa_ceiling, target));
    }
    lo = hi;
    f_lo = f_hi;
    have_lo = true;
    hi = std::min(hi * kBracketGrowth, options.kappa_ceiling);
    f_hi = gap(std::log(hi));
  }
  if (!have_lo) {
    if (lo >= hi) lo = hi / kBracketGrowth;
    f_lo = gap(std::log(lo));
    while (f_lo > 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo /= kBracketGrowth;
      if (lo < kSmallestPower) {
        throw ConvergenceError(
            fmt::format("{}: no lower power bracket for target {}", what,
                        target),
            f_lo);
      }
      f_lo = gap(std::log(lo));
    }
  }

  const auto root = brent_root(gap, std::log(lo), std::log(hi), f_lo, f_hi,
                               1e-3 * options.rel_tol * target);
  if (!(std::abs(root.fx) <= options.rel_tol * target)) {
    throw ConvergenceError(
        fmt::format("{}: root search stalled with residual {} (target {})",
                    what, root.fx, target),
        std::abs(root.fx) / target);
  }
  return std::exp(root.x);
}

template <typename Fn>
auto RunStep(SolveStep step, Fn&& fn) {
  try {
    return fn();
  } catch (const InfeasibleError& e) {
    throw AllocationError(step, true,
                          fmt::format("{}: {}", to_string(step), e.what()));
  } catch (const AllocationError&) {
    throw;
  } catch (const Error& e) {
    throw AllocationError(step, false,
                          fmt::format("{}: {}", to_string(step), e.what()));
  }
}

}  // namespace

void validate(const Scenario& s) {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(s.traffic_load) || !positive(s.delay_bound) ||
      !positive(s.hop1_mean_gain) || !positive(s.hop2_mean_gain) ||
      !positive(s.bt_product)) {
    throw DomainError(fmt::format(
        "scenario fields must be positive: load={}, delay_bound={}, g1={}, "
        "g2={}, bt={}",
        s.traffic_load, s.delay_bound, s.hop1_mean_gain, s.hop2_mean_gain,
        s.bt_product));
  }
  if (!(s.violation_prob > 0.0 && s.violation_prob < 1.0)) {
    throw DomainError(fmt::format(
        "violation probability must lie in (0, 1), got {}", s.violation_prob));
  }
}

double ConstraintResiduals::max() const {
  return std::max({capacity_match, equal_exponent, qos_bound, relay_balance});
}

std::string_view to_string(SolveStep step) {
  switch (step) {
    case SolveStep::kTheta1:
      return "theta1";
    case SolveStep::kKappa1:
      return "kappa1";
    case SolveStep::kTheta2:
      return "theta2";
    case SolveStep::kKappa2:
      return "kappa2";
  }
  return "unknown";
}

double solve_theta1(const Scenario& scenario) {
  validate(scenario);
  const double u =
      qos_rate_target(scenario.delay_bound, scenario.violation_prob);
  if (!(u > 0.0)) {
    throw DomainError(fmt::format(
        "violation probability {} is too close to 1 for a positive exponent",
        scenario.violation_prob));
  }
  return u / scenario.traffic_load;
}

double solve_kappa1(double theta1, const Scenario& scenario,
                    const SolverOptions& options) {
  validate(scenario);
  if (!(theta1 > 0.0)) {
    throw DomainError(fmt::format("theta1 must be positive, got {}", theta1));
  }
  return SolvePowerForCapacity(theta1, scenario.hop1_mean_gain,
                               scenario.bt_product, scenario.traffic_load,
                               options, "source power");
}

double solve_theta2(double kappa1, const Scenario& scenario,
                    const SolverOptions& options) {
  validate(scenario);
  const double u =
      qos_rate_target(scenario.delay_bound, scenario.violation_prob);
  const LinkModel hop1{kappa1, scenario.hop1_mean_gain, scenario.bt_product};
  validate(hop1);
  // theta A_SR(theta) = log E[e^{theta R_SR}] rises from 0 and, because
  // A_SR >= E[R_SR] >= A, reaches u no later than u / A.
  const auto gap = [&](double log_theta) {
    return log_moment_bandwidth({std::exp(log_theta)}, hop1) - u;
  };
  double hi = u / scenario.traffic_load;
  double f_hi = gap(std::log(hi));
  for (int i = 0; f_hi < 0.0; ++i) {
    if (i > 200) {
      throw ConvergenceError(
          fmt::format("theta2: no upper bracket found up to theta={}", hi),
          f_hi);
    }
    hi *= 2.0;
    f_hi = gap(std::log(hi));
  }
  double lo = hi / kBracketGrowth;
  double f_lo = gap(std::log(lo));
  for (int i = 0; f_lo > 0.0; ++i) {
    if (i > 300) {
      throw ConvergenceError(
          fmt::format("theta2: no lower bracket found down to theta={}", lo),
          f_lo);
    }
    hi = lo;
    f_hi = f_lo;
    lo /= kBracketGrowth;
    f_lo = gap(std::log(lo));
  }
  const auto root = brent_root(gap, std::log(lo), std::log(hi), f_lo, f_hi,
                               1e-3 * options.rel_tol * u);
  if (!(std::abs(root.fx) <= options.rel_tol * u)) {
    throw ConvergenceError(
        fmt::format("theta2: root search stalled with residual {} (u={})",
                    root.fx, u),
        std::abs(root.fx) / u);
  }
  return std::exp(root.x);
}

double solve_kappa2(double theta2, double kappa1, const Scenario& scenario,
                    const SolverOptions& options) {
  validate(scenario);
  if (!(theta2 > 0.0)) {
    throw DomainError(fmt::format("theta2 must be positive, got {}", theta2));
  }
  const LinkModel hop1{kappa1, scenario.hop1_mean_gain, scenario.bt_product};
  const double relay_arrivals =
      effective_bandwidth_service_rayleigh({theta2}, hop1);
  return SolvePowerForCapacity(theta2, scenario.hop2_mean_gain,
                               scenario.bt_product, relay_arrivals, options,
                               "relay power");
}

ConstraintResiduals constraint_residuals(const Scenario& scenario,
                                         const Allocation& allocation) {
  const double u =
      qos_rate_target(scenario.delay_bound, scenario.violation_prob);
  const LinkModel hop1{allocation.kappa1, scenario.hop1_mean_gain,
                       scenario.bt_product};
  const LinkModel hop2{allocation.kappa2, scenario.hop2_mean_gain,
                       scenario.bt_product};
  const double c_sr = effective_capacity_rayleigh({allocation.theta1}, hop1);
  const double c_rd = effective_capacity_rayleigh({allocation.theta2}, hop2);
  const double a_sr =
      effective_bandwidth_service_rayleigh({allocation.theta2}, hop1);
  const double rate1 = allocation.theta1 * c_sr;
  const double rate2 = allocation.theta2 * c_rd;

  ConstraintResiduals r;
  r.capacity_match =
      std::abs(c_sr - scenario.traffic_load) / scenario.traffic_load;
  r.equal_exponent = std::abs(rate1 - rate2) / u;
  r.qos_bound = std::abs(rate1 - u) / u;
  r.relay_balance = std::abs(a_sr - c_rd) / a_sr;
  return r;
}

Allocation allocate(const Scenario& scenario, const SolverOptions& options) {
  Allocation out{};
  out.theta1 = RunStep(SolveStep::kTheta1, [&] { return solve_theta1(scenario); });
  out.kappa1 = RunStep(SolveStep::kKappa1, [&] {
    return solve_kappa1(out.theta1, scenario, options);
  });
  out.theta2 = RunStep(SolveStep::kTheta2, [&] {
    return solve_theta2(out.kappa1, scenario, options);
  });
  out.kappa2 = RunStep(SolveStep::kKappa2, [&] {
    return solve_kappa2(out.theta2, out.kappa1, scenario, options);
  });
  out.delay_rate = out.theta1 * scenario.traffic_load;
  out.residuals = RunStep(SolveStep::kKappa2, [&] {
    return constraint_residuals(scenario, out);
  });
  return out;
}

}  // namespace relayqos
