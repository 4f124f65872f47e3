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

#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "qst/errors.hpp"
#include "qst/states.hpp"

using qst::Complex;
using qst::DensityMatrix;
using qst::Matrix;
using qst::PauliDecomposition;
using qst::PauliLabel;
using qst::Vector;

namespace {

Vector ket(std::initializer_list<Complex> amps) {
  Vector v(Eigen::Index(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v(i++) = a;
  return v;
}

}  // namespace

TEST_CASE("constructors validate their inputs") {
  CHECK(DensityMatrix::ground(2).dim() == 4);
  CHECK(DensityMatrix::ground(2).physical);

  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::raw(bad_trace), qst::ValidationError);

  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = Complex(0.0, 0.4);
  CHECK_THROWS_AS(DensityMatrix::raw(not_hermitian), qst::ValidationError);

  // Hermitian, trace one, but indefinite: fine as raw, rejected as physical.
  Matrix indefinite = Matrix::Zero(2, 2);
  indefinite(0, 0) = 1.3;
  indefinite(1, 1) = -0.3;
  CHECK_FALSE(DensityMatrix::raw(indefinite).physical);
  CHECK_THROWS_AS(DensityMatrix::physical_state(indefinite), qst::ValidationError);

  // pure() normalizes its input; only a zero ket is rejected.
  const DensityMatrix scaled = DensityMatrix::pure(ket({1.0, 1.0}));
  CHECK(scaled.mat(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(DensityMatrix::pure(ket({0.0, 0.0})), qst::UsageError);

  Matrix odd = Matrix::Identity(3, 3);
  odd /= 3.0;
  CHECK_THROWS_AS(DensityMatrix::raw(odd), qst::ValidationError);
}

TEST_CASE("decomposition matches direct traces") {
  std::mt19937_64 rng(21);
  for (int n : {1, 2, 3}) {
    const DensityMatrix rho = helpers::random_physical(n, rng);
    const PauliDecomposition d = qst::decompose(rho);
    REQUIRE(d.coeffs.size() == std::size_t(1) << (2 * n));
    for (std::size_t idx = 0; idx < d.coeffs.size(); ++idx) {
      const PauliLabel label = PauliLabel::from_index(idx, n);
      const double expect =
          (rho.mat * qst::pauli_matrix(label)).trace().real() / std::ldexp(1.0, int(n));
      CHECK(d.at(label) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(d.at(PauliLabel::from_index(0, n)) ==
          doctest::Approx(std::ldexp(1.0, -int(n))).epsilon(1e-14));
    CHECK(d.within_physical_bounds(1e-12));
  }
}

TEST_CASE("recompose inverts decompose") {
  std::mt19937_64 rng(22);
  for (int n : {1, 2, 3}) {
    const DensityMatrix rho = helpers::random_physical(n, rng);
    const DensityMatrix back = qst::recompose(qst::decompose(rho));
    CHECK((back.mat - rho.mat).norm() < 1e-12);
    CHECK_FALSE(back.physical);  // recompose never certifies positivity
  }
}

TEST_CASE("recompose rejects a broken identity coefficient") {
  PauliDecomposition d = PauliDecomposition::zeros(1);
  d.coeffs[0] = 0.75;  // must be 1/2 for a trace-one operator
  CHECK_THROWS_AS(qst::recompose(d), qst::ValidationError);
}

TEST_CASE("fidelity identities") {
  const DensityMatrix zero = DensityMatrix::ground(1);
  const DensityMatrix one = DensityMatrix::pure(ket({0.0, 1.0}));
  const double rt = 1.0 / std::sqrt(2.0);
  const DensityMatrix plus = DensityMatrix::pure(ket({rt, rt}));
  CHECK(std::abs(qst::fidelity(zero, zero) - 1.0) < 1e-12);
  CHECK(std::abs(qst::fidelity(zero, one)) < 1e-12);
  CHECK(std::abs(qst::fidelity(zero, plus) - 0.5) < 1e-12);

  std::mt19937_64 rng(23);
  const DensityMatrix a = helpers::random_physical(2, rng);
  const DensityMatrix b = helpers::random_physical(2, rng);
  CHECK(qst::fidelity(a, b) == doctest::Approx(qst::fidelity(b, a)).epsilon(1e-12));
  CHECK(std::abs(qst::fidelity(a, a) - 1.0) < 1e-12);
}

TEST_CASE("trace distance on orthogonal and identical states") {
  const DensityMatrix zero = DensityMatrix::ground(1);
  const DensityMatrix one = DensityMatrix::pure(ket({0.0, 1.0}));
  CHECK(qst::trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qst::trace_distance(zero, zero) < 1e-12);

  std::mt19937_64 rng(24);
  const DensityMatrix a = helpers::random_physical(2, rng);
  const DensityMatrix b = helpers::random_physical(2, rng);
  const double d = qst::trace_distance(a, b);
  CHECK(d >= 0.0);
  CHECK(d <= 1.0);
}

TEST_CASE("purity of pure and maximally mixed states") {
  std::mt19937_64 rng(25);
  CHECK(qst::purity(helpers::random_pure(2, rng)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  CHECK(qst::purity(DensityMatrix::physical_state(mixed)) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("simplex projection agrees with the bisection oracle") {
  std::mt19937_64 rng(26);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(2 + std::size_t(trial) % 7);
    for (double& x : v) x = 2.0 * gauss(rng);
    const auto got = qst::simplex_project(v);
    const auto expect = oracles::simplex_project_oracle(v);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-9));
  }
}

TEST_CASE("physical projection matches the independent eigensolver") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const DensityMatrix raw = helpers::random_perturbed(n, 0.4, rng);
    const DensityMatrix proj = qst::project_physical(raw);
    CHECK(proj.physical);
    CHECK(std::abs(proj.mat.trace().real() - 1.0) < 1e-10);
    CHECK(oracles::min_eigenvalue_oracle(proj.mat) >= -qst::kPsdEps);
    const Matrix expect = oracles::project_physical_oracle(raw.mat);
    CHECK((proj.mat - expect).norm() < 1e-8);
    // Idempotence: projecting a projection is the identity.
    const DensityMatrix again = qst::project_physical(proj);
    CHECK((again.mat - proj.mat).norm() < 1e-9);
  }
}

TEST_CASE("physical projection leaves physical states alone") {
  std::mt19937_64 rng(28);
  const DensityMatrix rho = helpers::random_physical(2, rng);
  const DensityMatrix proj = qst::project_physical(rho);
  CHECK((proj.mat - rho.mat).norm() < 1e-10);
}

TEST_CASE("decomposition accessor validates label width") {
  const PauliDecomposition d = PauliDecomposition::zeros(2);
  CHECK_THROWS_AS(d.at(PauliLabel::parse("X")), qst::UsageError);
}
