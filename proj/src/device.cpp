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

#include "qst/device.hpp"

#include <cmath>
#include <random>

#include "qst/errors.hpp"

namespace qst {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Qubit 0 (electron) occupies the most significant bit of a basis index.
int bit_of(std::size_t index, std::size_t qubit, std::size_t n) {
  return int((index >> (n - 1 - qubit)) & 1u);
}

bool electron_bright(std::size_t index, std::size_t dim) { return index < dim / 2; }

// Damp electron coherences (elements whose electron bit differs) by f.
Matrix damp_electron_coherences(Matrix m, double f) {
  const std::size_t dim = static_cast<std::size_t>(m.rows());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (electron_bright(i, dim) != electron_bright(j, dim)) m(Eigen::Index(i), Eigen::Index(j)) *= f;
    }
  }
  return m;
}

DensityMatrix rewrap(const DensityMatrix& like, Matrix m) {
  m = ((m + m.adjoint()) / 2.0).eval();
  return like.physical ? DensityMatrix::physical_state(std::move(m)) : DensityMatrix::raw(std::move(m));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void DeviceParams::validate() const {
  if (!(zero_field_splitting > 0.0)) throw ValidationError("device: zero-field splitting must be positive");
  if (!(static_field >= 0.0)) throw ValidationError("device: static field must be non-negative");
  if (!(gamma_e > 0.0)) throw ValidationError("device: gamma_e must be positive");
  if (!(hyperfine > 0.0)) throw ValidationError("device: hyperfine coupling must be positive");
  if (!(rabi_freq > 0.0)) throw ValidationError("device: Rabi frequency must be positive");
  if (n < 1 || n > 3) throw ValidationError("device: register size must be 1, 2 or 3");
}

void NoiseParams::validate() const {
  if (!(t2_star > 0.0)) throw ValidationError("noise: T2* must be positive");
  if (!(t2 > 0.0)) throw ValidationError("noise: T2 must be positive");
  if (t2_star > t2) throw ValidationError("noise: T2* must not exceed T2");
}

void ReadoutCalibration::validate() const {
  if (!(r_min > 0.0)) throw ValidationError("calibration: r_min must be positive");
  if (!(r_max > r_min)) throw ValidationError("calibration: r_max must exceed r_min");
}

double PulseSequence::total_duration() const {
  double t = 0.0;
  for (const PulseStep& s : steps) t += s.duration;
  return t;
}

std::size_t PulseSequence::pulse_count() const {
  std::size_t c = 0;
  for (const PulseStep& s : steps) c += (s.kind == PulseStep::Kind::Pulse) ? 1 : 0;
  return c;
}

Matrix qubit_hamiltonian(const DeviceParams& p, double electron_detuning_hz) {
  p.validate();
  const std::size_t dim = std::size_t{1} << p.n;
  const double nu_n = kGammaC13 * p.static_field;  // nuclear Zeeman, Hz
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(Eigen::Index(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    double ez = bit_of(k, 0, p.n) ? -1.0 : 1.0;  // electron Z eigenvalue
    double h = kTwoPi * electron_detuning_hz / 2.0 * ez;
    for (std::size_t q = 1; q < p.n; ++q) {
      double nz = bit_of(k, q, p.n) ? -1.0 : 1.0;
      h += kTwoPi * p.hyperfine / 4.0 * ez * nz;  // secular hyperfine
      h += kTwoPi * nu_n / 2.0 * nz;              // nuclear Zeeman
    }
    diag(Eigen::Index(k)) = h;
  }
  return diag.cast<Complex>().asDiagonal();
}

DensityMatrix apply_pulse(const DensityMatrix& state, const Rotation& r, const DeviceParams& p) {
  p.validate();
  if (state.n != p.n) throw UsageError("apply_pulse: state size does not match device");
  Matrix u = rotation_matrix(r, p.n);
  return rewrap(state, u * state.mat * u.adjoint());
}

DensityMatrix apply_pulse_timed(const DensityMatrix& state, const Rotation& r,
                                const DeviceParams& p, const NoiseParams& noise) {
  p.validate();
  noise.validate();
  if (state.n != p.n) throw UsageError("apply_pulse_timed: state size does not match device");
  if (r.angle == 0.0) return state;
  const double t = std::abs(r.angle) / (kTwoPi * p.rabi_freq);
  // Drive sign carries the rotation sense for negative angles.
  const double drive = (r.angle >= 0.0 ? 1.0 : -1.0) * kTwoPi * p.rabi_freq / 2.0;
  if (r.target >= p.n) throw UsageError("apply_pulse_timed: target qubit out of range");
  PauliLabel gen;
  gen.ops.assign(p.n, PauliOp::E);
  gen.ops[r.target] = (r.axis == Axis::X) ? PauliOp::X : PauliOp::Y;
  Matrix h = qubit_hamiltonian(p) + drive * pauli_matrix(gen);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases = (-Complex(0.0, 1.0) * t * es.eigenvalues().cast<Complex>().array()).exp().matrix();
  Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  Matrix m = u * state.mat * u.adjoint();
  if (noise.enabled) m = damp_electron_coherences(std::move(m), dephasing_factor(t, noise));
  return rewrap(state, std::move(m));
}

DensityMatrix apply_selective_pulse(const DensityMatrix& state, const Rotation& r,
                                    std::size_t cond_qubit, int cond_value,
                                    const DeviceParams& p) {
  p.validate();
  if (state.n != p.n) throw UsageError("apply_selective_pulse: state size does not match device");
  if (cond_qubit >= p.n || cond_qubit == r.target) {
    throw UsageError("apply_selective_pulse: condition qubit must be a distinct register qubit");
  }
  if (cond_value != 0 && cond_value != 1) throw UsageError("apply_selective_pulse: condition value must be 0 or 1");
  const std::size_t dim = state.dim();
  Matrix rot = rotation_matrix(r, p.n);
  Matrix sel = Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
  Matrix u = Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    bool hit = bit_of(i, cond_qubit, p.n) == cond_value;
    sel(Eigen::Index(i), Eigen::Index(i)) = hit ? 1.0 : 0.0;
    u(Eigen::Index(i), Eigen::Index(i)) = hit ? 0.0 : 1.0;
  }
  u += rot * sel;  // rotation on the selected block, identity elsewhere
  return rewrap(state, u * state.mat * u.adjoint());
}

DensityMatrix free_evolve(const DensityMatrix& state, double t, const DeviceParams& p,
                          const NoiseParams& noise) {
  if (state.n != p.n) throw UsageError("free_evolve: state size does not match device");
  return free_evolve_under(state, t, qubit_hamiltonian(p), noise);
}

DensityMatrix free_evolve_under(const DensityMatrix& state, double t, const Matrix& h,
                                const NoiseParams& noise) {
  noise.validate();
  if (t < 0.0 || !std::isfinite(t)) throw UsageError("free_evolve: time must be finite and non-negative");
  if (h.rows() != Eigen::Index(state.dim())) throw UsageError("free_evolve: Hamiltonian dimension mismatch");
  if (!is_hermitian(h, 1e-6)) throw ValidationError("free_evolve: Hamiltonian must be Hermitian");
  if (t == 0.0) return state;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases = (-Complex(0.0, 1.0) * t * es.eigenvalues().cast<Complex>().array()).exp().matrix();
  Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  Matrix m = u * state.mat * u.adjoint();
  if (noise.enabled) m = damp_electron_coherences(std::move(m), dephasing_factor(t, noise));
  return rewrap(state, std::move(m));
}

DensityMatrix dephase_electron(const DensityMatrix& state, double t, const NoiseParams& noise) {
  noise.validate();
  if (t < 0.0 || !std::isfinite(t)) throw UsageError("dephase_electron: time must be finite and non-negative");
  if (!noise.enabled || t == 0.0) return state;
  Matrix m = damp_electron_coherences(state.mat, dephasing_factor(t, noise));
  return rewrap(state, std::move(m));
}

double dephasing_factor(double t, const NoiseParams& noise) {
  if (!noise.enabled) return 1.0;
  double x = t / noise.t2_star;
  return std::exp(-x * x);
}

double expected_rate(const DensityMatrix& state, const ReadoutCalibration& calib) {
  calib.validate();
  const std::size_t dim = state.dim();
  double p_bright = 0.0;
  for (std::size_t k = 0; k < dim / 2; ++k) p_bright += state.mat(Eigen::Index(k), Eigen::Index(k)).real();
  return calib.r_min + p_bright * calib.delta();
}

MeasurementRecord simulate_counts(const DensityMatrix& state, const ReadoutCalibration& calib,
                                  std::uint64_t shots, std::uint64_t seed,
                                  const PauliLabel& label, int sign) {
  MeasurementRecord rec;
  rec.label = label;
  rec.sign = sign;
  rec.shots = shots;
  rec.calib = calib;
  if (shots == 0) {  // exact-rate record
    rec.photons = 0;
    rec.rate = expected_rate(state, calib);
    return rec;
  }
  double mean = double(shots) * std::max(expected_rate(state, calib), 0.0);
  std::mt19937_64 rng(seed);
  std::poisson_distribution<std::uint64_t> photon_draw(mean);
  rec.photons = photon_draw(rng);
  rec.rate = double(rec.photons) / double(shots);
  return rec;
}

ReadoutCalibration calibrate(const DeviceParams& p, const ReadoutCalibration& truth,
                             std::uint64_t shots, std::uint64_t seed) {
  p.validate();
  truth.validate();
  if (shots == 0) return truth;  // infinite-shot mode
  DensityMatrix bright = DensityMatrix::ground(p.n);
  DensityMatrix dark = apply_pulse(bright, Rotation{Axis::X, M_PI, 0}, p);
  MeasurementRecord hi = simulate_counts(bright, truth, shots, derive_seed(seed, 0));
  MeasurementRecord lo = simulate_counts(dark, truth, shots, derive_seed(seed, 1));
  ReadoutCalibration est{hi.rate, lo.rate};
  if (!(est.delta() > 0.0) || !(est.r_min > 0.0)) {
    throw CalibrationError("calibration contrast is not positive; increase calibration shots");
  }
  return est;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root ^ (0x9E3779B97F4A7C15ull * (index + 1)));
}

}  // namespace qst
