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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qst {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerance for checks that should hold up to floating-point roundoff.
inline constexpr double kMatEps = 1e-12;

// Single-qubit factor of a Pauli product. Enum order gives the
// lexicographic schedule order E < X < Y < Z.
enum class PauliOp : std::uint8_t { E = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);
PauliOp pauli_from_char(char c);

// Pauli product over an n-qubit register. Qubit 0 is the electron and is
// the most significant position, e.g. "ZE" = Z (electron) x E (nuclear).
struct PauliLabel {
  std::vector<PauliOp> ops;

  std::size_t size() const { return ops.size(); }
  bool is_identity() const;
  std::string str() const;
  // Base-4 rank within the lexicographic ordering of all n-qubit products.
  std::size_t index() const;

  static PauliLabel parse(const std::string& text);
  static PauliLabel from_index(std::size_t index, std::size_t n);

  bool operator==(const PauliLabel&) const = default;
};

enum class Axis : std::uint8_t { X, Y };

// Rotation exp(-i * angle/2 * sigma_axis) acting on one qubit.
struct Rotation {
  Axis axis = Axis::X;
  double angle = 0.0;       // radians, must lie in (-2*pi, 2*pi]
  std::size_t target = 0;   // qubit index
};

Matrix pauli_matrix(PauliOp op);
Matrix pauli_matrix(const PauliLabel& label);

// Kronecker product of the factors, first factor most significant.
Matrix tensor(const std::vector<Matrix>& factors);

// Single-qubit rotation embedded into an n-qubit register.
Matrix rotation_matrix(const Rotation& r, std::size_t n);

// u * a * u^dagger. Throws ValidationError when u is not unitary.
Matrix conjugate(const Matrix& u, const Matrix& a);

bool approx_equal(const Matrix& a, const Matrix& b, double eps = kMatEps);
bool is_unitary(const Matrix& u, double eps = kMatEps);
bool is_hermitian(const Matrix& a, double eps = kMatEps);

}  // namespace qst
