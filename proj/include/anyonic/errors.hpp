// Copyright 2026 The Anyonic Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace anyonic {

/// Invalid sizes, unknown keys, malformed input files.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An API was called with arguments that violate its precondition.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A string operator does not have the geometry an operation requires.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A protocol invariant was violated at run time (e.g. memory not in |0~>).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Floating point guard tripped (closure of a displacement loop, norm drift).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace anyonic
