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

#include "json.hpp"
#include "qst/device.hpp"

namespace qst {

struct CalibrationConfig {
  double r_max = 0.04;   // photons per shot, bright reference
  double r_min = 0.028;  // dark reference
  std::uint64_t shots = 3'000'000;

  ReadoutCalibration truth() const { return ReadoutCalibration{r_max, r_min}; }
};

struct TomographyConfig {
  std::string state = "zero";
  std::uint64_t shots_per_setting = 3'000'000;
  std::uint64_t seed = 1;
  bool projection = true;
};

struct RamseyConfig {
  double detuning = 2e6;   // Hz
  std::size_t n_t = 200;   // delay points per trace
  std::size_t n_fid = 0;   // 0 = derive from the register size
  double t_max = 4e-6;     // seconds
};

struct ExperimentConfig {
  DeviceParams device;
  NoiseParams noise;
  CalibrationConfig calibration;
  TomographyConfig tomography;
  RamseyConfig ramsey;

  void validate() const;
};

// Strict parse: unknown keys and type mismatches raise ConfigError naming
// the section and field; absent fields keep their defaults.
ExperimentConfig parse_config(const std::string& json_text);

ExperimentConfig load_config(const std::string& path);

// Inverse of parse_config; parse_config(config_to_json(c).dump()) == c.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

}  // namespace qst
