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

#include "qst/pauli.hpp"

namespace qst {

// Eigenvalues may dip this far below zero and still count as physical.
inline constexpr double kPsdEps = 1e-9;

// Hermitian, trace-one operator on n qubits. "physical" additionally
// certifies eigenvalues >= -kPsdEps; raw reconstructions may violate
// positivity and carry physical = false.
struct DensityMatrix {
  std::size_t n = 0;
  Matrix mat;
  bool physical = false;

  std::size_t dim() const { return static_cast<std::size_t>(mat.rows()); }

  static DensityMatrix raw(Matrix m);
  static DensityMatrix physical_state(Matrix m);
  static DensityMatrix pure(const Vector& ket);
  // Computational basis state |00...0>.
  static DensityMatrix ground(std::size_t n);
};

// Real coefficients c_P = tr(rho P) / 2^n, indexed by PauliLabel::index().
// The identity coefficient is pinned to 1/2^n for trace-one operators.
struct PauliDecomposition {
  std::size_t n = 0;
  std::vector<double> coeffs;  // size 4^n

  double at(const PauliLabel& label) const;
  double& at(const PauliLabel& label);
  // |c_P| <= 1/2^n + slack for every coefficient (holds for physical states).
  bool within_physical_bounds(double slack = 0.0) const;

  static PauliDecomposition zeros(std::size_t n);
};

PauliDecomposition decompose(const DensityMatrix& rho);

// Sum of c_P * P. Validates the identity coefficient; the result is raw.
DensityMatrix recompose(const PauliDecomposition& d);

// Normalized Hilbert-Schmidt overlap tr(a b) / sqrt(tr(a^2) tr(b^2)).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Nearest trace-one PSD operator in Frobenius norm: eigendecompose and
// project the spectrum onto the probability simplex in the fixed eigenbasis.
DensityMatrix project_physical(const DensityMatrix& rho);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

double purity(const DensityMatrix& rho);

// Euclidean projection of v onto {w : w_i >= 0, sum w_i = 1}.
std::vector<double> simplex_project(const std::vector<double>& v);

}  // namespace qst
