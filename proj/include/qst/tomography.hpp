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

#include <string>
#include <vector>

#include "qst/device.hpp"
#include "qst/planner.hpp"
#include "qst/states.hpp"

namespace qst {

// Named test states: four single-qubit states and four electron+nucleus
// states (product and Bell-type), plus a caller-supplied density matrix.
enum class StateLabel : std::uint8_t { Zero, One, Plus, Minus, S1, S2, S3, S4, Custom };

StateLabel parse_state_label(const std::string& text);
std::string state_label_str(StateLabel label);
std::size_t state_label_qubits(StateLabel label);

struct PreparedState {
  StateLabel label = StateLabel::Custom;
  std::vector<Gate> circuit;  // pulse program from |0...0>
  DensityMatrix ideal;
};

// Builds the preparation program and ideal state for a named label.
PreparedState make_prepared(StateLabel label);

// Wraps a caller-supplied state; the protocol measures it as-is.
PreparedState make_custom(const DensityMatrix& ideal);

// One gate on the density matrix; with noise enabled, electron coherences
// are damped for the gate's wall-clock duration.
DensityMatrix apply_gate(const DensityMatrix& state, const Gate& g, const DeviceParams& p,
                         const NoiseParams& noise);

// Runs the preparation program from |0...0>. Custom states are returned
// as supplied; named programs reproduce their ideal exactly when noise is
// disabled.
DensityMatrix prepare(const PreparedState& prep, const DeviceParams& p, const NoiseParams& noise);

struct TomographyRun {
  std::size_t n = 0;
  std::vector<MeasurementRecord> records;  // one per schedule entry, in order
  ReadoutCalibration calib;                // estimate used for extraction
  std::uint64_t shots_per_setting = 0;
  std::uint64_t seed = 0;
};

// Full protocol: for every schedule entry, prepare fresh (readout is
// destructive), apply the conversion circuit, and read the photon rate.
// Rates are simulated against `truth`; `estimate` is stamped on each record
// for later extraction. shots == 0 records exact expected rates.
TomographyRun run_protocol(const PreparedState& prep, const std::vector<ConversionPlan>& schedule,
                           const DeviceParams& p, const NoiseParams& noise,
                           const ReadoutCalibration& truth, const ReadoutCalibration& estimate,
                           std::uint64_t shots, std::uint64_t seed);

// Pauli coefficient from one record: sign * [(r - r_min)/(2^(n-1) dr) - 1/2^n].
double extract_coefficient(const MeasurementRecord& record, const ReadoutCalibration& calib,
                           std::size_t n);

struct PopulationEstimate {
  double raw_bright = 0.0;  // (r - r_min)/dr, kept even outside [0, 1]
  double raw_dark = 0.0;
  double bright = 0.0;  // clipped to [0, 1] for reporting
  double dark = 0.0;
  bool clipped = false;
};

PopulationEstimate extract_populations(const MeasurementRecord& record,
                                       const ReadoutCalibration& calib);

struct Reconstruction {
  PauliDecomposition coeffs;  // extracted, identity fixed at 1/2^n
  DensityMatrix raw;          // linear inversion, possibly unphysical
  DensityMatrix physical;     // nearest physical state
};

// Linear inversion over a complete record set plus the physical projection.
// Missing or duplicated settings raise ValidationError naming the label.
Reconstruction reconstruct(const TomographyRun& run);

// Root-mean-square of the imaginary parts of a matrix's entries.
double rms_imag(const Matrix& m);

}  // namespace qst
