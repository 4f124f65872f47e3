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

#include "qst/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qst/errors.hpp"

namespace qst {

namespace {

std::size_t qubit_count_for_dim(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols || rows < 2) throw ValidationError("density matrix must be square, dim >= 2");
  std::size_t dim = static_cast<std::size_t>(rows);
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) throw ValidationError("density matrix dimension must be a power of two");
  return n;
}

void check_hermitian_trace_one(const Matrix& m) {
  if (!is_hermitian(m)) throw ValidationError("density matrix must be Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kMatEps || std::abs(m.trace().imag()) > kMatEps) {
    throw ValidationError("density matrix must have unit trace");
  }
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

DensityMatrix DensityMatrix::raw(Matrix m) {
  std::size_t n = qubit_count_for_dim(m.rows(), m.cols());
  check_hermitian_trace_one(m);
  return DensityMatrix{n, std::move(m), false};
}

DensityMatrix DensityMatrix::physical_state(Matrix m) {
  std::size_t n = qubit_count_for_dim(m.rows(), m.cols());
  check_hermitian_trace_one(m);
  if (min_eigenvalue(m) < -kPsdEps) {
    throw ValidationError("density matrix flagged physical has eigenvalue below -1e-9");
  }
  return DensityMatrix{n, std::move(m), true};
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
  double norm = ket.norm();
  if (norm < 1e-12) throw UsageError("cannot normalize a zero ket");
  Vector v = ket / norm;
  Matrix m = v * v.adjoint();
  // Symmetrize away roundoff so the Hermiticity check is exact.
  m = ((m + m.adjoint()) / 2.0).eval();
  return physical_state(std::move(m));
}

DensityMatrix DensityMatrix::ground(std::size_t n) {
  if (n == 0) throw UsageError("register needs at least one qubit");
  Vector ket = Vector::Zero(Eigen::Index(std::size_t{1} << n));
  ket(0) = 1.0;
  return pure(ket);
}

double PauliDecomposition::at(const PauliLabel& label) const {
  if (label.size() != n) throw UsageError("Pauli label size does not match register");
  return coeffs.at(label.index());
}

double& PauliDecomposition::at(const PauliLabel& label) {
  if (label.size() != n) throw UsageError("Pauli label size does not match register");
  return coeffs.at(label.index());
}

bool PauliDecomposition::within_physical_bounds(double slack) const {
  double bound = 1.0 / double(std::size_t{1} << n) + slack;
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [bound](double c) { return std::abs(c) <= bound; });
}

PauliDecomposition PauliDecomposition::zeros(std::size_t n) {
  if (n == 0) throw UsageError("register needs at least one qubit");
  return PauliDecomposition{n, std::vector<double>(std::size_t{1} << (2 * n), 0.0)};
}

PauliDecomposition decompose(const DensityMatrix& rho) {
  if (!is_hermitian(rho.mat)) throw ValidationError("decompose: input is not Hermitian");
  std::size_t n = rho.n;
  std::size_t count = std::size_t{1} << (2 * n);
  double scale = 1.0 / double(rho.dim());
  PauliDecomposition d = PauliDecomposition::zeros(n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Matrix p = pauli_matrix(PauliLabel::from_index(idx, n));
    d.coeffs[idx] = (rho.mat * p).trace().real() * scale;
  }
  return d;
}

DensityMatrix recompose(const PauliDecomposition& d) {
  std::size_t n = d.n;
  std::size_t count = std::size_t{1} << (2 * n);
  if (d.coeffs.size() != count) throw ValidationError("recompose: coefficient vector has wrong size");
  if (std::abs(d.coeffs[0] - 1.0 / double(std::size_t{1} << n)) > kMatEps) {
    throw ValidationError("recompose: identity coefficient must equal 1/2^n");
  }
  std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (d.coeffs[idx] == 0.0) continue;
    m += d.coeffs[idx] * pauli_matrix(PauliLabel::from_index(idx, n));
  }
  return DensityMatrix::raw(std::move(m));
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw UsageError("fidelity: dimension mismatch");
  double overlap = (a.mat * b.mat).trace().real();
  double pa = (a.mat * a.mat).trace().real();
  double pb = (b.mat * b.mat).trace().real();
  double denom = std::sqrt(pa * pb);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw ValidationError("fidelity: vanishing purity in denominator");
  }
  return overlap / denom;
}

std::vector<double> simplex_project(const std::vector<double>& v) {
  if (v.empty()) throw UsageError("simplex projection of an empty vector");
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0;
  double tau = 0.0;
  std::size_t support = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    running += u[k];
    double candidate = (running - 1.0) / double(k + 1);
    if (u[k] - candidate > 0.0) {
      tau = candidate;
      support = k + 1;
    }
  }
  if (support == 0) throw ValidationError("simplex projection found empty support");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

DensityMatrix project_physical(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat);
  if (es.info() != Eigen::Success) throw ValidationError("project_physical: eigensolver failed");
  std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<double> proj = simplex_project(lam);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(proj.data(), Eigen::Index(proj.size()));
  Matrix m = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  m = ((m + m.adjoint()) / 2.0).eval();
  // Projected spectra sum to one by construction; trim fp residue so the
  // trace-one validation stays exact.
  m -= Matrix::Identity(m.rows(), m.cols()) * ((m.trace().real() - 1.0) / double(m.rows()));
  return DensityMatrix::physical_state(std::move(m));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw UsageError("trace_distance: dimension mismatch");
  Matrix diff = a.mat - b.mat;
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) {
  return (rho.mat * rho.mat).trace().real();
}

}  // namespace qst
