// Copyright 2026 The THz Planner Authors
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

#ifndef THZ_ERRORS_H_
#define THZ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace thz {

// Root of every error thrown by the planner library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical or model domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A queue in the model would be unstable (arrival rate >= service rate).
class StabilityError : public Error {
 public:
  using Error::Error;
};

// No admissible operating point meets the reliability target.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Bracketing root finder was handed an interval without a sign change.
class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

// Problem too large for an exhaustive routine, or too small a frequency grid.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace thz

#endif  // THZ_ERRORS_H_
