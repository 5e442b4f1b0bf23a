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

#ifndef RELAYQOS_QUADRATURE_HPP_
#define RELAYQOS_QUADRATURE_HPP_

#include <functional>
#include <span>

namespace relayqos {

struct QuadratureResult {
  double value;
  double error_estimate;  // absolute
};

// Globally adaptive 21-point Gauss-Kronrod integration of `f` over consecutive panels given by
// `breakpoints` (strictly increasing; the last entry may be +infinity).
// Throws ConvergenceError, carrying the achieved error estimate, when the
// relative error estimate exceeds `accept_rel_tol`.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           double rel_tol = 1e-12,
                           double accept_rel_tol = 1e-9);

}  // namespace relayqos

#endif  // RELAYQOS_QUADRATURE_HPP_
