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

#include <vector>

#include "qst/device.hpp"
#include "qst/pauli.hpp"

namespace qst {

// Abstract circuit element: a quarter/half-turn rotation on any qubit, or a
// controlled-phase between the electron (qubit 0) and one nuclear qubit.
struct Gate {
  enum class Kind : std::uint8_t { Rotation, CZ } kind = Kind::Rotation;
  Rotation rotation;        // valid when kind == Rotation
  std::size_t nuclear = 1;  // CZ partner, valid when kind == CZ

  static Gate rot(Axis axis, double angle, std::size_t target);
  static Gate cz(std::size_t nuclear);
  std::string str() const;  // e.g. "X90@0", "Y-90@1", "CZ@1"
};

// Gates that weight-two electron-identity products need at n = 3; every
// n <= 2 plan fits in 6 (see the repository notes on minimal circuits).
inline constexpr std::size_t kDefaultGateBudget = 7;

// Clifford circuit U with U P U^dagger = sign * Z(x)E(x)...(x)E for the
// target product P. Gates are listed in application order; `unitary`
// caches their product.
struct ConversionPlan {
  PauliLabel target;
  std::vector<Gate> gates;
  int sign = 1;
  Matrix unitary;
};

// Shortest circuit over {X90, Y90 on any qubit; CZ(0, j)} found by
// breadth-first search over the conjugation action; deterministic for a
// fixed gate enumeration order. Throws UsageError for the identity target
// or when the minimal circuit exceeds the budget.
ConversionPlan plan_conversion(const PauliLabel& target, std::size_t gate_budget = kDefaultGateBudget);

// All 4^n - 1 plans in lexicographic label order (E < X < Y < Z).
std::vector<ConversionPlan> plan_full_schedule(std::size_t n, std::size_t gate_budget = kDefaultGateBudget);

// Signed fidelity tr(Z(x)E... * U P U^dagger) * sign / 2^n, evaluated in
// exact scaled Gaussian-integer arithmetic; valid plans return exactly 1.0.
double verify_plan(const ConversionPlan& plan);

struct PulseCompilation {
  ConversionPlan plan;
  PulseSequence sequence;
  double conversion_fidelity = 0.0;

  bool accepted() const { return conversion_fidelity >= 0.99; }
};

// Lower a 2-qubit plan onto MW pulses and free-precession intervals
// (CZ -> t = 1/(2*A_hf); leftover diagonal phases are commuted into the
// measured observable by quarter-turn reframing of later pulses). Plans
// containing nuclear local rotations are rejected with CompilationError.
PulseCompilation compile_to_pulses(const ConversionPlan& plan, const DeviceParams& p);

// Dense matrix of one abstract gate on an n-qubit register.
Matrix gate_matrix(const Gate& g, std::size_t n);

Matrix cz_matrix(std::size_t n, std::size_t nuclear);

double gate_duration(const Gate& g, const DeviceParams& p);

}  // namespace qst
