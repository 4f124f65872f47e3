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

#include "qst/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <string>

#include "qst/errors.hpp"

namespace qst {

namespace {

constexpr double kPi = M_PI;
constexpr double kHalfPi = M_PI / 2.0;

// Conjugation action of the quarter-turn generators on single-qubit Pauli
// letters, indexed E=0, X=1, Y=2, Z=3.
//   X_90: Y -> Z, Z -> -Y        Y_90: X -> -Z, Z -> X
constexpr std::array<int, 4> kX90To{0, 1, 3, 2};
constexpr std::array<int, 4> kX90Sign{1, 1, 1, -1};
constexpr std::array<int, 4> kY90To{0, 3, 2, 1};
constexpr std::array<int, 4> kY90Sign{1, -1, 1, 1};

// CZ action on the (electron letter, nuclear letter) pair, index = 4*e + m.
// CZ moves weight between the letters: E<->Z on one side toggles with X/Y on
// the other, XY and YX pick up a sign.
constexpr std::array<int, 16> kCzTo{0, 13, 14, 3, 7, 10, 9, 4, 11, 6, 5, 8, 12, 1, 2, 15};
constexpr std::array<int, 16> kCzSign{1, 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, 1, 1, 1, 1, 1};

std::size_t pow4(std::size_t k) { return std::size_t{1} << (2 * k); }

int digit_of(std::size_t letters, std::size_t qubit, std::size_t n) {
  return int((letters >> (2 * (n - 1 - qubit))) & 3u);
}

std::size_t with_digit(std::size_t letters, std::size_t qubit, std::size_t n, int value) {
  const std::size_t shift = 2 * (n - 1 - qubit);
  return (letters & ~(std::size_t{3} << shift)) | (std::size_t(value) << shift);
}

// Gates are enumerated X90@0, Y90@0, X90@1, ... then CZ@1, CZ@2, ...; the
// search visits them in this order, which fixes every tie-break.
std::size_t gate_count(std::size_t n) { return 2 * n + (n - 1); }

Gate gate_from_index(std::size_t gi, std::size_t n) {
  if (gi < 2 * n) {
    const std::size_t q = gi / 2;
    return Gate::rot((gi % 2 == 0) ? Axis::X : Axis::Y, kHalfPi, q);
  }
  return Gate::cz(gi - 2 * n + 1);
}

// state = 2 * letters + (sign < 0); returns the successor state.
std::size_t apply_gate_to_state(std::size_t state, std::size_t gi, std::size_t n) {
  std::size_t letters = state >> 1;
  int sign = (state & 1u) ? -1 : 1;
  if (gi < 2 * n) {
    const std::size_t q = gi / 2;
    const int d = digit_of(letters, q, n);
    if (gi % 2 == 0) {
      letters = with_digit(letters, q, n, kX90To[std::size_t(d)]);
      sign *= kX90Sign[std::size_t(d)];
    } else {
      letters = with_digit(letters, q, n, kY90To[std::size_t(d)]);
      sign *= kY90Sign[std::size_t(d)];
    }
  } else {
    const std::size_t j = gi - 2 * n + 1;
    const int pair = 4 * digit_of(letters, 0, n) + digit_of(letters, j, n);
    const int to = kCzTo[std::size_t(pair)];
    sign *= kCzSign[std::size_t(pair)];
    letters = with_digit(letters, 0, n, to / 4);
    letters = with_digit(letters, j, n, to % 4);
  }
  return 2 * letters + (sign < 0 ? 1u : 0u);
}

// ---------------------------------------------------------------------------
// Exact arithmetic for verify_plan: Gaussian-integer matrices carrying a
// power of 1/sqrt(2), so quarter-turn circuits score without rounding.

struct GInt {
  long long re = 0;
  long long im = 0;
};

GInt operator+(GInt a, GInt b) { return {a.re + b.re, a.im + b.im}; }
GInt operator*(GInt a, GInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

struct ExactMat {
  std::size_t d = 0;
  int half = 0;  // value = entries / sqrt(2)^half
  std::vector<GInt> a;

  GInt& at(std::size_t r, std::size_t c) { return a[r * d + c]; }
  const GInt& at(std::size_t r, std::size_t c) const { return a[r * d + c]; }
};

ExactMat exact_identity(std::size_t d) {
  ExactMat m{d, 0, std::vector<GInt>(d * d)};
  for (std::size_t i = 0; i < d; ++i) m.at(i, i) = {1, 0};
  return m;
}

ExactMat exact_mul(const ExactMat& x, const ExactMat& y) {
  ExactMat m{x.d, x.half + y.half, std::vector<GInt>(x.d * x.d)};
  for (std::size_t i = 0; i < x.d; ++i)
    for (std::size_t k = 0; k < x.d; ++k) {
      const GInt xik = x.at(i, k);
      if (xik.re == 0 && xik.im == 0) continue;
      for (std::size_t j = 0; j < x.d; ++j) m.at(i, j) = m.at(i, j) + xik * y.at(k, j);
    }
  return m;
}

ExactMat exact_adjoint(const ExactMat& x) {
  ExactMat m{x.d, x.half, std::vector<GInt>(x.d * x.d)};
  for (std::size_t i = 0; i < x.d; ++i)
    for (std::size_t j = 0; j < x.d; ++j) m.at(i, j) = {x.at(j, i).re, -x.at(j, i).im};
  return m;
}

// I_(2^pre) (x) m2 (x) I_(2^post) for a 2x2 block.
ExactMat exact_embed(const std::array<GInt, 4>& m2, int half, std::size_t pre, std::size_t post,
                     std::size_t d) {
  ExactMat m{d, half, std::vector<GInt>(d * d)};
  const std::size_t pd = std::size_t{1} << post;
  for (std::size_t a = 0; a < (std::size_t{1} << pre); ++a)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (std::size_t b = 0; b < pd; ++b) {
          const std::size_t row = (a * 2 + std::size_t(r)) * pd + b;
          const std::size_t col = (a * 2 + std::size_t(c)) * pd + b;
          m.at(row, col) = m2[std::size_t(r) * 2 + std::size_t(c)];
        }
  return m;
}

ExactMat exact_rotation(const Rotation& r, std::size_t n) {
  const double turns = r.angle / kHalfPi;
  const long long k = std::llround(turns);
  if (std::abs(turns - double(k)) > 1e-9 || k == 0 || std::llabs(k) > 2)
    throw UsageError("verify_plan: only quarter- and half-turn rotations are scored exactly");
  std::array<GInt, 4> m2{};
  int half = 0;
  if (r.axis == Axis::X) {
    switch (k) {
      case 1: m2 = {GInt{1, 0}, GInt{0, -1}, GInt{0, -1}, GInt{1, 0}}; half = 1; break;
      case -1: m2 = {GInt{1, 0}, GInt{0, 1}, GInt{0, 1}, GInt{1, 0}}; half = 1; break;
      case 2: m2 = {GInt{0, 0}, GInt{0, -1}, GInt{0, -1}, GInt{0, 0}}; break;
      default: m2 = {GInt{0, 0}, GInt{0, 1}, GInt{0, 1}, GInt{0, 0}}; break;
    }
  } else {
    switch (k) {
      case 1: m2 = {GInt{1, 0}, GInt{-1, 0}, GInt{1, 0}, GInt{1, 0}}; half = 1; break;
      case -1: m2 = {GInt{1, 0}, GInt{1, 0}, GInt{-1, 0}, GInt{1, 0}}; half = 1; break;
      case 2: m2 = {GInt{0, 0}, GInt{-1, 0}, GInt{1, 0}, GInt{0, 0}}; break;
      default: m2 = {GInt{0, 0}, GInt{1, 0}, GInt{-1, 0}, GInt{0, 0}}; break;
    }
  }
  return exact_embed(m2, half, r.target, n - 1 - r.target, std::size_t{1} << n);
}

ExactMat exact_cz(std::size_t n, std::size_t nuclear) {
  const std::size_t d = std::size_t{1} << n;
  ExactMat m{d, 0, std::vector<GInt>(d * d)};
  for (std::size_t i = 0; i < d; ++i) {
    const bool e1 = ((i >> (n - 1)) & 1u) != 0;
    const bool m1 = ((i >> (n - 1 - nuclear)) & 1u) != 0;
    m.at(i, i) = {(e1 && m1) ? -1 : 1, 0};
  }
  return m;
}

ExactMat exact_pauli(const PauliLabel& label) {
  const std::size_t n = label.size();
  ExactMat m = exact_identity(std::size_t{1} << n);
  for (std::size_t q = 0; q < n; ++q) {
    std::array<GInt, 4> m2{};
    switch (label.ops[q]) {
      case PauliOp::E: m2 = {GInt{1, 0}, GInt{0, 0}, GInt{0, 0}, GInt{1, 0}}; break;
      case PauliOp::X: m2 = {GInt{0, 0}, GInt{1, 0}, GInt{1, 0}, GInt{0, 0}}; break;
      case PauliOp::Y: m2 = {GInt{0, 0}, GInt{0, -1}, GInt{0, 1}, GInt{0, 0}}; break;
      case PauliOp::Z: m2 = {GInt{1, 0}, GInt{0, 0}, GInt{0, 0}, GInt{-1, 0}}; break;
    }
    m = exact_mul(m, exact_embed(m2, 0, q, n - 1 - q, std::size_t{1} << n));
  }
  return m;
}

}  // namespace

Gate Gate::rot(Axis axis, double angle, std::size_t target) {
  Gate g;
  g.kind = Kind::Rotation;
  g.rotation = Rotation{axis, angle, target};
  return g;
}

Gate Gate::cz(std::size_t nuclear) {
  Gate g;
  g.kind = Kind::CZ;
  g.nuclear = nuclear;
  return g;
}

std::string Gate::str() const {
  if (kind == Kind::CZ) return "CZ@" + std::to_string(nuclear);
  const long long deg = std::llround(rotation.angle * 180.0 / kPi);
  const char axis = (rotation.axis == Axis::X) ? 'X' : 'Y';
  return axis + std::to_string(deg) + "@" + std::to_string(rotation.target);
}

ConversionPlan plan_conversion(const PauliLabel& target, std::size_t gate_budget) {
  const std::size_t n = target.size();
  if (n == 0) throw UsageError("plan_conversion: empty target label");
  if (target.is_identity()) throw UsageError("plan_conversion: the identity needs no measurement setting");

  const std::size_t n_states = 2 * pow4(n);
  const std::size_t start = 2 * target.index();
  const std::size_t goal_letters = 3 * pow4(n - 1);  // Z (x) E...E

  std::vector<int> parent(n_states, -1);
  std::vector<int> via(n_states, -1);
  std::vector<char> seen(n_states, 0);
  std::deque<std::size_t> queue;
  seen[start] = 1;
  queue.push_back(start);
  std::size_t found = n_states;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    if ((s >> 1) == goal_letters) {
      found = s;
      break;
    }
    for (std::size_t gi = 0; gi < gate_count(n); ++gi) {
      const std::size_t t = apply_gate_to_state(s, gi, n);
      if (seen[t]) continue;
      seen[t] = 1;
      parent[t] = int(s);
      via[t] = int(gi);
      queue.push_back(t);
    }
  }
  if (found == n_states)
    throw UsageError("plan_conversion: no circuit reaches the readout axis for " + target.str());

  std::vector<std::size_t> gate_indices;
  for (std::size_t s = found; s != start; s = std::size_t(parent[s]))
    gate_indices.push_back(std::size_t(via[s]));
  std::reverse(gate_indices.begin(), gate_indices.end());
  if (gate_indices.size() > gate_budget)
    throw UsageError("plan_conversion: minimal circuit for " + target.str() + " needs " +
                     std::to_string(gate_indices.size()) + " gates, budget is " +
                     std::to_string(gate_budget));

  ConversionPlan plan;
  plan.target = target;
  plan.sign = (found & 1u) ? -1 : 1;
  plan.unitary = Matrix::Identity(Eigen::Index(1) << n, Eigen::Index(1) << n);
  for (std::size_t gi : gate_indices) {
    plan.gates.push_back(gate_from_index(gi, n));
    plan.unitary = gate_matrix(plan.gates.back(), n) * plan.unitary;
  }

  PauliLabel readout;
  readout.ops.assign(n, PauliOp::E);
  readout.ops[0] = PauliOp::Z;
  const Matrix got = conjugate(plan.unitary, pauli_matrix(target));
  if (!approx_equal(got, double(plan.sign) * pauli_matrix(readout), kMatEps))
    throw ValidationError("plan_conversion: synthesized circuit fails its conjugation check");
  return plan;
}

std::vector<ConversionPlan> plan_full_schedule(std::size_t n, std::size_t gate_budget) {
  if (n < 1 || n > 3) throw UsageError("plan_full_schedule: register size must be 1, 2 or 3");
  std::vector<ConversionPlan> plans;
  plans.reserve(pow4(n) - 1);
  for (std::size_t idx = 1; idx < pow4(n); ++idx)
    plans.push_back(plan_conversion(PauliLabel::from_index(idx, n), gate_budget));
  return plans;
}

double verify_plan(const ConversionPlan& plan) {
  const std::size_t n = plan.target.size();
  if (n == 0) throw UsageError("verify_plan: empty target label");
  const std::size_t d = std::size_t{1} << n;

  ExactMat u = exact_identity(d);
  for (const Gate& g : plan.gates) {
    const ExactMat gm = (g.kind == Gate::Kind::CZ)
                            ? exact_cz(n, g.nuclear)
                            : exact_rotation(g.rotation, n);
    u = exact_mul(gm, u);
  }
  const ExactMat conj = exact_mul(exact_mul(u, exact_pauli(plan.target)), exact_adjoint(u));
  if (conj.half % 2 != 0) throw ValidationError("verify_plan: unbalanced scaling");

  long long trace = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const long long z = (i < d / 2) ? 1 : -1;  // Z on the electron, identity elsewhere
    trace += z * conj.at(i, i).re;
  }
  return double(plan.sign) * double(trace) / std::ldexp(1.0, int(n) + conj.half / 2);
}

Matrix cz_matrix(std::size_t n, std::size_t nuclear) {
  if (n < 2) throw UsageError("cz_matrix: needs at least one nuclear qubit");
  if (nuclear < 1 || nuclear >= n) throw UsageError("cz_matrix: nuclear index out of range");
  const Eigen::Index d = Eigen::Index(1) << n;
  Matrix m = Matrix::Identity(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool e1 = ((std::size_t(i) >> (n - 1)) & 1u) != 0;
    const bool m1 = ((std::size_t(i) >> (n - 1 - nuclear)) & 1u) != 0;
    if (e1 && m1) m(i, i) = Complex(-1.0, 0.0);
  }
  return m;
}

Matrix gate_matrix(const Gate& g, std::size_t n) {
  if (g.kind == Gate::Kind::CZ) return cz_matrix(n, g.nuclear);
  return rotation_matrix(g.rotation, n);
}

double gate_duration(const Gate& g, const DeviceParams& p) {
  if (g.kind == Gate::Kind::CZ) return 1.0 / (2.0 * p.hyperfine);
  return std::abs(g.rotation.angle) / (2.0 * kPi * p.rabi_freq);
}

PulseCompilation compile_to_pulses(const ConversionPlan& plan, const DeviceParams& p) {
  p.validate();
  const std::size_t n = plan.target.size();
  if (n == 0) throw UsageError("compile_to_pulses: empty target label");
  if (p.n != n) throw UsageError("compile_to_pulses: device register size does not match the plan");
  if (n > 2)
    throw CompilationError(
        "compile_to_pulses: free precession entangles every nuclear spin at once; only "
        "single-nucleus registers are supported");

  PulseCompilation out;
  out.plan = plan;

  // Each free-precession interval realizes CZ up to diagonal phases. The
  // nuclear phases commute with everything that follows and stabilize the
  // readout observable; the electron quarter turn is commuted forward by
  // re-aiming later pulse axes.
  int quarter = 0;
  for (const Gate& g : plan.gates) {
    if (g.kind == Gate::Kind::CZ) {
      PulseStep step;
      step.kind = PulseStep::Kind::Delay;
      step.duration = 1.0 / (2.0 * p.hyperfine);
      out.sequence.steps.push_back(step);
      quarter = (quarter + 1) % 4;
      continue;
    }
    if (g.rotation.target != 0)
      throw CompilationError("compile_to_pulses: gate " + g.str() +
                             " targets a nuclear spin; only electron microwave pulses are available");
    Axis axis = g.rotation.axis;
    double angle = g.rotation.angle;
    switch (quarter) {
      case 1:
        if (axis == Axis::X) axis = Axis::Y;
        else { axis = Axis::X; angle = -angle; }
        break;
      case 2:
        angle = -angle;
        break;
      case 3:
        if (axis == Axis::X) { axis = Axis::Y; angle = -angle; }
        else axis = Axis::X;
        break;
      default:
        break;
    }
    PulseStep step;
    step.kind = PulseStep::Kind::Pulse;
    step.rotation = Rotation{axis, angle, 0};
    step.duration = std::abs(angle) / (2.0 * kPi * p.rabi_freq);
    out.sequence.steps.push_back(step);
  }

  if (out.sequence.total_duration() > 15e-6)
    throw CompilationError("compile_to_pulses: sequence duration " +
                           std::to_string(out.sequence.total_duration() * 1e6) +
                           " us exceeds the 15 us envelope");

  // Score the sequence as implemented: ideal pulses, physical free evolution.
  const Eigen::Index d = Eigen::Index(1) << n;
  Matrix u = Matrix::Identity(d, d);
  const Matrix h = qubit_hamiltonian(p, 0.0);
  for (const PulseStep& s : out.sequence.steps) {
    if (s.kind == PulseStep::Kind::Pulse) {
      u = rotation_matrix(s.rotation, n) * u;
    } else {
      Vector phases(d);
      for (Eigen::Index i = 0; i < d; ++i)
        phases(i) = std::exp(Complex(0.0, -1.0) * s.duration * h(i, i));
      u = phases.asDiagonal() * u;
    }
  }
  PauliLabel readout;
  readout.ops.assign(n, PauliOp::E);
  readout.ops[0] = PauliOp::Z;
  const Matrix conj = u * pauli_matrix(plan.target) * u.adjoint();
  const double score =
      double(plan.sign) * (pauli_matrix(readout) * conj).trace().real() / double(d);
  out.conversion_fidelity = std::clamp(score, -1.0, 1.0);
  return out;
}

}  // namespace qst
