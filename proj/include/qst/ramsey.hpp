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

#include "qst/device.hpp"
#include "qst/states.hpp"

namespace qst {

// One free-induction-decay acquisition: photon rate after a variable delay
// and a final X_90 readout pulse, on a uniform time grid.
struct FidTrace {
  std::vector<double> times;  // seconds
  std::vector<double> rates;  // photons per shot
  double detuning = 0.0;      // Hz
  std::uint64_t shots = 0;    // 0 = exact expected rates
};

// N_t points, 0 to t_max inclusive.
std::vector<double> uniform_times(std::size_t n_t, double t_max);

// Evolves the state for each delay under the detuned Hamiltonian, applies
// X_90 to the electron, and reads the photon rate. The grid must resolve
// the detuning (spacing < 1/(2 * detuning)).
FidTrace simulate_fid(const DensityMatrix& state, double detuning_hz,
                      const std::vector<double>& times, const DeviceParams& p,
                      const NoiseParams& noise, const ReadoutCalibration& calib,
                      std::uint64_t shots, std::uint64_t seed);

struct QuadratureFit {
  double c_x = 0.0;
  double c_y = 0.0;
  double sigma_x = 0.0;  // standard errors from the fit residuals
  double sigma_y = 0.0;
};

// Least-squares fit of rate = a + b cos(2 pi f t) + c sin(2 pi f t) at the
// trace's known detuning; (b, c) map to (c_Y, c_X) through the calibration.
QuadratureFit fit_quadratures(const FidTrace& trace, const ReadoutCalibration& calib);

// Peak of the naive discrete Fourier transform, DC excluded; resolution is
// one bin, 1/(N dt).
double dominant_frequency(const FidTrace& trace);

struct BudgetReport {
  std::size_t n = 0;
  std::size_t settings_fast = 0;    // 4^n - 1
  std::size_t settings_ramsey = 0;  // N_fid * N_t
  double ratio = 0.0;
};

// Settings-count arithmetic for the two protocols.
BudgetReport budget(std::size_t n, std::size_t n_t, std::size_t n_fid);

// FID acquisitions needed to cover all 4^n - 1 coefficients when each
// trace yields two quadratures: ceil((4^n - 1)/2).
std::size_t default_fid_count(std::size_t n);

}  // namespace qst
