// Copyright 2026 The qst authors
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

namespace qst {

// Caller handed us arguments that violate a precondition.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Data failed an invariant check (non-Hermitian input, incomplete run, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Calibration produced an unusable contrast (delta_r <= 0).
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A conversion plan uses a primitive the pulse layer cannot realize.
struct CompilationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qst
