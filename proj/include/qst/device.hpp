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

#include <cstdint>
#include <vector>

#include "qst/pauli.hpp"
#include "qst/states.hpp"

namespace qst {

// 13C gyromagnetic ratio, Hz per tesla.
inline constexpr double kGammaC13 = 1.07084e7;

// Electron spin qubit {m_S = 0, m_S = -1} plus optional 13C nuclear qubits.
// All frequencies in Hz, fields in tesla.
struct DeviceParams {
  double zero_field_splitting = 2.87e9;   // D
  double static_field = 0.028;            // B, along the defect axis
  double gamma_e = 2.8024951e10;          // electron gyromagnetic ratio
  double hyperfine = 2.16e6;              // A_hf, secular part of the coupling
  double rabi_freq = 9e6;                 // MW drive strength
  std::size_t n = 1;                      // register size (electron first)

  void validate() const;
};

// Quasi-static inhomogeneous dephasing; Gaussian decay on electron
// coherences. t2 is carried for configuration realism and validation
// (t2_star <= t2) but the first-order model uses t2_star only.
struct NoiseParams {
  double t2_star = 40e-6;
  double t2 = 700e-6;
  bool enabled = true;

  void validate() const;
};

// Photon count rates (photons per shot) for the two electron readout
// outcomes: r_max when m_S = 0, r_min when m_S = -1.
struct ReadoutCalibration {
  double r_max = 0.0;
  double r_min = 0.0;

  double delta() const { return r_max - r_min; }
  void validate() const;
};

// Hardware-level step: a resonant MW pulse or a free-precession interval.
struct PulseStep {
  enum class Kind : std::uint8_t { Pulse, Delay } kind = Kind::Delay;
  Rotation rotation;       // meaningful when kind == Pulse
  double duration = 0.0;   // seconds
};

struct PulseSequence {
  std::vector<PulseStep> steps;

  double total_duration() const;
  std::size_t pulse_count() const;
};

// One tomography setting's readout. shots == 0 marks an exact-rate record
// (rate equals the expected rate, photons unused); for sampled records
// shots >= 1 and rate == photons / shots.
struct MeasurementRecord {
  PauliLabel label;
  int sign = 1;
  std::uint64_t shots = 0;
  std::uint64_t photons = 0;
  double rate = 0.0;
  ReadoutCalibration calib;  // estimate snapshot used later for extraction
};

// Rotating-frame register Hamiltonian in rad/s, diagonal in the
// computational basis: electron detuning (0 on resonance), secular
// hyperfine (A_hf/4) Z(x)Z per nuclear qubit, nuclear Zeeman on each
// nuclear qubit.
Matrix qubit_hamiltonian(const DeviceParams& p, double electron_detuning_hz = 0.0);

// Ideal (zero-duration) rotation pulse.
DensityMatrix apply_pulse(const DensityMatrix& state, const Rotation& r, const DeviceParams& p);

// Finite-duration pulse: conjugation by exp(-i (H_free + H_drive) t) with
// t = |angle| / (2*pi*rabi_freq), plus dephasing over t when enabled.
DensityMatrix apply_pulse_timed(const DensityMatrix& state, const Rotation& r,
                                const DeviceParams& p, const NoiseParams& noise);

// Electron rotation applied only on the subspace where `cond_qubit` is in
// computational state `cond_value` (spectrally selective MW pulse).
DensityMatrix apply_selective_pulse(const DensityMatrix& state, const Rotation& r,
                                    std::size_t cond_qubit, int cond_value,
                                    const DeviceParams& p);

DensityMatrix free_evolve(const DensityMatrix& state, double t, const DeviceParams& p,
                          const NoiseParams& noise);

// Free evolution under an explicit Hamiltonian (rad/s); used for detuned
// frames. Dephasing damps electron coherences as in free_evolve.
DensityMatrix free_evolve_under(const DensityMatrix& state, double t, const Matrix& h,
                                const NoiseParams& noise);

double dephasing_factor(double t, const NoiseParams& noise);

// Damps electron coherences as free dephasing over an interval t would,
// without any coherent evolution.
DensityMatrix dephase_electron(const DensityMatrix& state, double t, const NoiseParams& noise);

// r_min + p_bright * (r_max - r_min), p_bright = electron m_S=0 marginal.
double expected_rate(const DensityMatrix& state, const ReadoutCalibration& calib);

// Poisson-sampled photon total over `shots` repetitions. Deterministic per
// seed. label/sign annotate the record for downstream extraction.
MeasurementRecord simulate_counts(const DensityMatrix& state, const ReadoutCalibration& calib,
                                  std::uint64_t shots, std::uint64_t seed,
                                  const PauliLabel& label = PauliLabel{}, int sign = 1);

// Samples bright (|0...0>) and dark (electron flipped) references; returns
// estimated rates. shots == 0 reproduces `truth` exactly. Throws
// CalibrationError when the estimated contrast is not positive.
ReadoutCalibration calibrate(const DeviceParams& p, const ReadoutCalibration& truth,
                             std::uint64_t shots, std::uint64_t seed);

// splitmix64-based sub-seed derivation: every consumer of randomness gets
// derive_seed(parent_seed, role_or_setting_index).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace qst
