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

#include "relayqos/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <fmt/core.h>

#include "relayqos/errors.hpp"

namespace relayqos {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxPanels = 4000;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292202226, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename G>
Panel Kronrod21(const G& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 10> left{};
  std::array<double, 10> right{};
  const double fc = g(center);
  double gauss = 0.0;
  double kronrod = kKronrodWeights[10] * fc;
  double abs_sum = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    left[j] = g(center - dx);
    right[j] = g(center + dx);
    const double pair = left[j] + right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(left[j]) + std::abs(right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double spread = kKronrodWeights[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    spread += kKronrodWeights[j] *
              (std::abs(left[j] - mean) + std::abs(right[j] - mean));
  }
  const double width = std::abs(half);
  spread *= width;
  abs_sum *= width;
  double error = std::abs((kronrod - gauss) * half);
  if (spread != 0.0 && error != 0.0) {
    error = spread * std::min(1.0, std::pow(200.0 * error / spread, 1.5));
  }
  error = std::max(50.0 * kEps * abs_sum, error);
  return {lo, hi, kronrod * half, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints, double rel_tol,
                           double accept_rel_tol) {
  if (breakpoints.size() < 2) {
    throw DomainError("integrate: need at least two breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i]) ||
        std::isinf(breakpoints[i])) {
      throw DomainError("integrate: breakpoints must increase from a finite start");
    }
  }

  // A trailing [a, inf) panel is mapped onto t in (0, 1] by x = a + (1-t)/t.
  const double tail_start = breakpoints[breakpoints.size() - 2];
  const bool infinite = std::isinf(breakpoints.back());
  const auto tail = [&](double t) {
    const double x = tail_start + (1.0 - t) / t;
    const double value = f(x);
    return value == 0.0 ? 0.0 : value / (t * t);
  };

  // Finite panels are tagged by their own bounds; the mapped tail panel by
  // bounds inside (0, 1] flagged through `in_tail`.
  struct Work {
    Panel panel;
    bool in_tail;
    bool operator<(const Work& other) const { return panel < other.panel; }
  };
  const auto evaluate = [&](double lo, double hi, bool in_tail) {
    return Work{in_tail ? Kronrod21(tail, lo, hi) : Kronrod21(f, lo, hi),
                in_tail};
  };

  std::priority_queue<Work> heap;
  const std::size_t finite_panels = breakpoints.size() - (infinite ? 2 : 1);
  for (std::size_t i = 0; i < finite_panels; ++i) {
    heap.push(evaluate(breakpoints[i], breakpoints[i + 1], false));
  }
  if (infinite) heap.push(evaluate(0.0, 1.0, true));

  const auto totals = [&heap] {
    double value = 0.0;
    double error = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().panel.value;
      error += copy.top().panel.error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  int panels = static_cast<int>(heap.size());
  while (error > rel_tol * std::abs(value) && panels < kMaxPanels) {
    const Work worst = heap.top();
    const double lo = worst.panel.lo;
    const double hi = worst.panel.hi;
    const double mid = 0.5 * (lo + hi);
    // Stop once the worst panel can no longer be split meaningfully.
    if (!(mid > lo && mid < hi) ||
        (hi - lo) <= 100.0 * kEps * std::max(std::abs(lo), std::abs(hi))) {
      break;
    }
    heap.pop();
    const Work left = evaluate(lo, mid, worst.in_tail);
    const Work right = evaluate(mid, hi, worst.in_tail);
    value += left.panel.value + right.panel.value - worst.panel.value;
    error += left.panel.error + right.panel.error - worst.panel.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    // Running sums drift; refresh them now and then.
    if (panels % 256 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();

  if (!std::isfinite(value) || error > accept_rel_tol * std::abs(value)) {
    throw ConvergenceError(
        fmt::format("quadrature did not converge: value {} with error "
                    "estimate {}",
                    value, error),
        error);
  }
  return {value, error};
}

}  // namespace relayqos
