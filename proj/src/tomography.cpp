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

#include "qst/tomography.hpp"

#include <algorithm>
#include <cmath>

#include "qst/errors.hpp"

namespace qst {

namespace {

constexpr double kHalfPi = M_PI / 2.0;
constexpr double kPi = M_PI;

Vector ket2(std::initializer_list<Complex> amps) {
  Vector v(Eigen::Index(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v(i++) = a;
  return v;
}

}  // namespace

StateLabel parse_state_label(const std::string& text) {
  if (text == "zero") return StateLabel::Zero;
  if (text == "one") return StateLabel::One;
  if (text == "plus") return StateLabel::Plus;
  if (text == "minus") return StateLabel::Minus;
  if (text == "s1") return StateLabel::S1;
  if (text == "s2") return StateLabel::S2;
  if (text == "s3") return StateLabel::S3;
  if (text == "s4") return StateLabel::S4;
  throw UsageError("unknown state label \"" + text +
                   "\" (expected zero|one|plus|minus|s1|s2|s3|s4)");
}

std::string state_label_str(StateLabel label) {
  switch (label) {
    case StateLabel::Zero: return "zero";
    case StateLabel::One: return "one";
    case StateLabel::Plus: return "plus";
    case StateLabel::Minus: return "minus";
    case StateLabel::S1: return "s1";
    case StateLabel::S2: return "s2";
    case StateLabel::S3: return "s3";
    case StateLabel::S4: return "s4";
    case StateLabel::Custom: break;
  }
  return "custom";
}

std::size_t state_label_qubits(StateLabel label) {
  switch (label) {
    case StateLabel::Zero:
    case StateLabel::One:
    case StateLabel::Plus:
    case StateLabel::Minus:
      return 1;
    case StateLabel::S1:
    case StateLabel::S2:
    case StateLabel::S3:
    case StateLabel::S4:
      return 2;
    case StateLabel::Custom:
      break;
  }
  throw UsageError("custom states have no fixed register size");
}

PreparedState make_prepared(StateLabel label) {
  const double rt = 1.0 / std::sqrt(2.0);
  PreparedState prep;
  prep.label = label;
  switch (label) {
    case StateLabel::Zero:
      prep.ideal = DensityMatrix::ground(1);
      break;
    case StateLabel::One:
      prep.circuit = {Gate::rot(Axis::X, kPi, 0)};
      prep.ideal = DensityMatrix::pure(ket2({0.0, 1.0}));
      break;
    case StateLabel::Plus:
      prep.circuit = {Gate::rot(Axis::Y, kHalfPi, 0)};
      prep.ideal = DensityMatrix::pure(ket2({rt, rt}));
      break;
    case StateLabel::Minus:
      prep.circuit = {Gate::rot(Axis::X, kHalfPi, 0)};
      prep.ideal = DensityMatrix::pure(ket2({rt, Complex(0.0, -rt)}));
      break;
    case StateLabel::S1:
      prep.ideal = DensityMatrix::ground(2);
      break;
    case StateLabel::S2:
      prep.circuit = {Gate::rot(Axis::Y, kHalfPi, 1)};
      prep.ideal = DensityMatrix::pure(ket2({rt, rt, 0.0, 0.0}));
      break;
    case StateLabel::S3:
      prep.circuit = {Gate::rot(Axis::Y, kHalfPi, 0), Gate::rot(Axis::Y, -kHalfPi, 1),
                      Gate::cz(1), Gate::rot(Axis::Y, kHalfPi, 1)};
      prep.ideal = DensityMatrix::pure(ket2({rt, 0.0, 0.0, rt}));
      break;
    case StateLabel::S4:
      prep.circuit = {Gate::rot(Axis::Y, kHalfPi, 0), Gate::rot(Axis::Y, -kHalfPi, 1),
                      Gate::cz(1), Gate::rot(Axis::Y, kHalfPi, 1), Gate::rot(Axis::X, kPi, 0)};
      prep.ideal = DensityMatrix::pure(ket2({0.0, rt, rt, 0.0}));
      break;
    case StateLabel::Custom:
      throw UsageError("make_prepared: custom states need make_custom with a matrix");
  }
  return prep;
}

PreparedState make_custom(const DensityMatrix& ideal) {
  if (ideal.n == 0) throw UsageError("make_custom: empty state");
  PreparedState prep;
  prep.label = StateLabel::Custom;
  prep.ideal = ideal;
  return prep;
}

DensityMatrix apply_gate(const DensityMatrix& state, const Gate& g, const DeviceParams& p,
                         const NoiseParams& noise) {
  if (state.n != p.n) throw UsageError("apply_gate: state size does not match device");
  const Matrix u = gate_matrix(g, state.n);
  DensityMatrix out = state;
  out.mat = u * state.mat * u.adjoint();
  if (noise.enabled) out = dephase_electron(out, gate_duration(g, p), noise);
  return out;
}

DensityMatrix prepare(const PreparedState& prep, const DeviceParams& p, const NoiseParams& noise) {
  if (prep.label == StateLabel::Custom) return prep.ideal;
  if (prep.ideal.n != p.n) throw UsageError("prepare: state label needs an n = " +
                                            std::to_string(prep.ideal.n) + " register");
  DensityMatrix state = DensityMatrix::ground(p.n);
  for (const Gate& g : prep.circuit) state = apply_gate(state, g, p, noise);
  return state;
}

TomographyRun run_protocol(const PreparedState& prep, const std::vector<ConversionPlan>& schedule,
                           const DeviceParams& p, const NoiseParams& noise,
                           const ReadoutCalibration& truth, const ReadoutCalibration& estimate,
                           std::uint64_t shots, std::uint64_t seed) {
  p.validate();
  noise.validate();
  truth.validate();
  estimate.validate();
  if (prep.ideal.n != p.n) throw UsageError("run_protocol: prepared state size does not match device");
  if (schedule.empty()) throw UsageError("run_protocol: empty schedule");

  TomographyRun run;
  run.n = p.n;
  run.calib = estimate;
  run.shots_per_setting = shots;
  run.seed = seed;
  run.records.reserve(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const ConversionPlan& plan = schedule[i];
    if (plan.target.size() != p.n)
      throw UsageError("run_protocol: plan " + plan.target.str() + " does not fit the register");
    DensityMatrix state = prepare(prep, p, noise);
    for (const Gate& g : plan.gates) state = apply_gate(state, g, p, noise);
    MeasurementRecord rec =
        simulate_counts(state, truth, shots, derive_seed(seed, i), plan.target, plan.sign);
    rec.calib = estimate;
    run.records.push_back(std::move(rec));
  }
  return run;
}

double extract_coefficient(const MeasurementRecord& record, const ReadoutCalibration& calib,
                           std::size_t n) {
  if (n == 0) throw UsageError("extract_coefficient: register size must be positive");
  if (!(calib.delta() > 0.0))
    throw CalibrationError("extract_coefficient: readout contrast must be positive");
  const double scale = std::ldexp(1.0, int(n) - 1) * calib.delta();
  return double(record.sign) * ((record.rate - calib.r_min) / scale - std::ldexp(1.0, -int(n)));
}

PopulationEstimate extract_populations(const MeasurementRecord& record,
                                       const ReadoutCalibration& calib) {
  if (!(calib.delta() > 0.0))
    throw CalibrationError("extract_populations: readout contrast must be positive");
  PopulationEstimate est;
  est.raw_bright = (record.rate - calib.r_min) / calib.delta();
  est.raw_dark = (calib.r_max - record.rate) / calib.delta();
  est.bright = std::clamp(est.raw_bright, 0.0, 1.0);
  est.dark = std::clamp(est.raw_dark, 0.0, 1.0);
  est.clipped = est.raw_bright < 0.0 || est.raw_bright > 1.0;
  return est;
}

Reconstruction reconstruct(const TomographyRun& run) {
  const std::size_t n = run.n;
  if (n == 0) throw UsageError("reconstruct: empty run");
  const std::size_t n_labels = std::size_t{1} << (2 * n);

  std::vector<const MeasurementRecord*> by_index(n_labels, nullptr);
  for (const MeasurementRecord& rec : run.records) {
    if (rec.label.size() != n)
      throw ValidationError("reconstruct: record label " + rec.label.str() + " has wrong size");
    if (rec.label.is_identity())
      throw ValidationError("reconstruct: the identity is never measured");
    const std::size_t idx = rec.label.index();
    if (by_index[idx] != nullptr)
      throw ValidationError("reconstruct: duplicate record for setting " + rec.label.str());
    by_index[idx] = &rec;
  }

  Reconstruction out;
  out.coeffs = PauliDecomposition::zeros(n);
  out.coeffs.coeffs[0] = std::ldexp(1.0, -int(n));
  for (std::size_t idx = 1; idx < n_labels; ++idx) {
    if (by_index[idx] == nullptr)
      throw ValidationError("reconstruct: no record for setting " +
                            PauliLabel::from_index(idx, n).str());
    out.coeffs.coeffs[idx] = extract_coefficient(*by_index[idx], by_index[idx]->calib, n);
  }
  out.raw = recompose(out.coeffs);
  out.physical = project_physical(out.raw);
  return out;
}

double rms_imag(const Matrix& m) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) sum += m(i, j).imag() * m(i, j).imag();
  return std::sqrt(sum / double(m.rows() * m.cols()));
}

}  // namespace qst
