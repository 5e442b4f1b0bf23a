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

#ifndef RELAYQOS_ERRORS_HPP_
#define RELAYQOS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace relayqos {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A result is not representable in double precision (overflow or total
// underflow), even after log-domain evaluation.
class RangeError : public Error {
 public:
  using Error::Error;
};

// An iterative method (quadrature, root search) failed to reach its
// tolerance. `achieved` carries the best error estimate obtained.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// No transmit power within the configured ceiling satisfies a constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A user supplied configuration is malformed or violates an invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A queue in the simulated tandem has mean service below its arrival rate.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

// Not enough samples to estimate a statistic.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace relayqos

#endif  // RELAYQOS_ERRORS_HPP_
