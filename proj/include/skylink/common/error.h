// Copyright 2026 The Skylink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKYLINK_COMMON_ERROR_H_
#define SKYLINK_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace skylink {

// A caller broke a documented precondition (wrong vector length, stepping a
// finished episode, ...). These indicate programming errors.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid scenario or trainer configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure during optimisation (non-finite loss or gradient).
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void Require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace skylink

#endif  // SKYLINK_COMMON_ERROR_H_
