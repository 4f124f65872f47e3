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

#include "qst/pauli.hpp"

#include <cmath>

#include "qst/errors.hpp"

namespace qst {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::E: return 'E';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  throw UsageError("invalid PauliOp value");
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'E': return PauliOp::E;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
    default: break;
  }
  throw UsageError(std::string("invalid Pauli letter '") + c + "' (want E/X/Y/Z)");
}

bool PauliLabel::is_identity() const {
  for (PauliOp op : ops) {
    if (op != PauliOp::E) return false;
  }
  return true;
}

std::string PauliLabel::str() const {
  std::string s;
  s.reserve(ops.size());
  for (PauliOp op : ops) s.push_back(pauli_char(op));
  return s;
}

std::size_t PauliLabel::index() const {
  std::size_t idx = 0;
  for (PauliOp op : ops) idx = idx * 4 + static_cast<std::size_t>(op);
  return idx;
}

PauliLabel PauliLabel::parse(const std::string& text) {
  if (text.empty()) throw UsageError("empty Pauli label");
  PauliLabel label;
  label.ops.reserve(text.size());
  for (char c : text) label.ops.push_back(pauli_from_char(c));
  return label;
}

PauliLabel PauliLabel::from_index(std::size_t index, std::size_t n) {
  if (n == 0) throw UsageError("Pauli label needs at least one qubit");
  std::size_t count = std::size_t{1} << (2 * n);
  if (index >= count) throw UsageError("Pauli label index out of range");
  PauliLabel label;
  label.ops.resize(n);
  for (std::size_t q = n; q-- > 0;) {
    label.ops[q] = static_cast<PauliOp>(index & 3);
    index >>= 2;
  }
  return label;
}

Matrix pauli_matrix(PauliOp op) {
  Matrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (op) {
    case PauliOp::E: m << 1.0, 0.0, 0.0, 1.0; break;
    case PauliOp::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case PauliOp::Y: m << 0.0, -i, i, 0.0; break;
    case PauliOp::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

Matrix pauli_matrix(const PauliLabel& label) {
  if (label.ops.empty()) throw UsageError("empty Pauli label");
  std::vector<Matrix> factors;
  factors.reserve(label.ops.size());
  for (PauliOp op : label.ops) factors.push_back(pauli_matrix(op));
  return tensor(factors);
}

Matrix tensor(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw UsageError("tensor of zero factors");
  Matrix acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const Matrix& b = factors[k];
    Matrix out(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i) {
      for (Eigen::Index j = 0; j < acc.cols(); ++j) {
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
      }
    }
    acc = std::move(out);
  }
  return acc;
}

Matrix rotation_matrix(const Rotation& r, std::size_t n) {
  if (n == 0) throw UsageError("rotation needs at least one qubit");
  if (r.target >= n) throw UsageError("rotation target qubit out of range");
  if (!(r.angle > -kTwoPi && r.angle <= kTwoPi) || !std::isfinite(r.angle)) {
    throw UsageError("rotation angle must lie in (-2*pi, 2*pi]");
  }
  PauliOp generator = (r.axis == Axis::X) ? PauliOp::X : PauliOp::Y;
  Matrix local = std::cos(r.angle / 2.0) * Matrix::Identity(2, 2) -
                 Complex(0.0, std::sin(r.angle / 2.0)) * pauli_matrix(generator);
  std::vector<Matrix> factors(n, Matrix::Identity(2, 2));
  factors[r.target] = local;
  return tensor(factors);
}

Matrix conjugate(const Matrix& u, const Matrix& a) {
  if (u.rows() != u.cols() || a.rows() != a.cols() || u.rows() != a.rows()) {
    throw UsageError("conjugate needs square matrices of equal dimension");
  }
  if (!is_unitary(u)) throw UsageError("conjugate: matrix is not unitary");
  return u * a * u.adjoint();
}

bool approx_equal(const Matrix& a, const Matrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= eps;
}

bool is_unitary(const Matrix& u, double eps) {
  if (u.rows() != u.cols()) return false;
  Matrix g = u.adjoint() * u;
  return approx_equal(g, Matrix::Identity(u.rows(), u.cols()), eps);
}

bool is_hermitian(const Matrix& a, double eps) {
  if (a.rows() != a.cols()) return false;
  return approx_equal(a, a.adjoint().eval(), eps);
}

}  // namespace qst
