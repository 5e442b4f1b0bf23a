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

#ifndef RELAYQOS_ALLOCATOR_HPP_
#define RELAYQOS_ALLOCATOR_HPP_

#include <string_view>

#include "relayqos/errors.hpp"

namespace relayqos {

// One two-hop decode-and-forward problem instance in per-frame units.
struct Scenario {
  double traffic_load;     // constant source rate, nats/frame
  double delay_bound;      // frames
  double violation_prob;   // max Pr{end-to-end delay > delay_bound}
  double hop1_mean_gain;   // E{h1}, source -> relay
  double hop2_mean_gain;   // E{h2}, relay -> destination
  double bt_product;       // B T of each hop
};

// Throws DomainError unless all fields are positive and violation_prob < 1.
void validate(const Scenario& scenario);

// Relative closure errors of the four optimisation constraints.
struct ConstraintResiduals {
  double capacity_match = 0.0;  // |C_SR(theta1, kappa1) - A| / A
  double equal_exponent = 0.0;  // |theta1 C_SR - theta2 C_RD| / u
  double qos_bound = 0.0;       // |theta1 C_SR - u| / u
  double relay_balance = 0.0;   // |A_SR(theta2, kappa1) - C_RD(theta2, kappa2)| / A_SR

  double max() const;
};

struct Allocation {
  double kappa1;      // source transmit power
  double kappa2;      // relay transmit power
  double theta1;      // QoS exponent of the source queue, 1/nats
  double theta2;      // QoS exponent of the relay queue, 1/nats
  double delay_rate;  // u = theta1 C_SR(theta1), 1/frames
  ConstraintResiduals residuals;

  double total_power() const { return kappa1 + kappa2; }
};

struct SolverOptions {
  double kappa_bracket_lo = 1e-6;
  double kappa_bracket_hi = 1.0;
  double kappa_ceiling = 1e6;  // infeasible beyond this power
  double rel_tol = 1e-9;       // accepted relative residual of each scalar solve
};

enum class SolveStep { kTheta1, kKappa1, kTheta2, kKappa2 };

std::string_view to_string(SolveStep step);

// Raised by allocate(): identifies the failing step and whether the failure
// was an infeasibility (power ceiling reached) or a numerical one.
class AllocationError : public Error {
 public:
  AllocationError(SolveStep step, bool infeasible, const std::string& what)
      : Error(what), step_(step), infeasible_(infeasible) {}
  SolveStep step() const noexcept { return step_; }
  bool infeasible() const noexcept { return infeasible_; }

 private:
  SolveStep step_;
  bool infeasible_;
};

// Step 1a: theta1 = u / A with u from qos_rate_target().
double solve_theta1(const Scenario& scenario);

// Step 1b: the kappa1 with C_SR(theta1, kappa1) == A.
double solve_kappa1(double theta1, const Scenario& scenario,
                    const SolverOptions& options = {});

// Step 2a: the theta2 with theta2 A_SR(theta2, kappa1) == u.
double solve_theta2(double kappa1, const Scenario& scenario,
                    const SolverOptions& options = {});

// Step 2b: the kappa2 with C_RD(theta2, kappa2) == A_SR(theta2, kappa1).
double solve_kappa2(double theta2, double kappa1, const Scenario& scenario,
                    const SolverOptions& options = {});

// Minimum-total-power allocation meeting the end-to-end delay target.
// Throws AllocationError.
Allocation allocate(const Scenario& scenario, const SolverOptions& options = {});

// Recomputes the constraint residuals of an allocation from scratch.
ConstraintResiduals constraint_residuals(const Scenario& scenario,
                                         const Allocation& allocation);

}  // namespace relayqos

#endif  // RELAYQOS_ALLOCATOR_HPP_
