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

#include "qst/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "qst/errors.hpp"

namespace qst {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& section,
                    std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) { ok = true; break; }
    if (!ok)
      throw ConfigError("config: unknown key \"" + item.key() + "\" in \"" + section + "\"");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

json require_object(const json& root, const char* key) {
  const json* v = find(root, key);
  if (v == nullptr) return json::object();
  if (!v->is_object())
    throw ConfigError(std::string("config: \"") + key + "\" must be an object");
  return *v;
}

void read_real(const json& obj, const std::string& section, const char* key, double& out) {
  const json* v = find(obj, key);
  if (v == nullptr) return;
  if (!v->is_number())
    throw ConfigError("config: \"" + section + "." + key + "\" must be a number");
  out = v->get<double>();
}

void read_count(const json& obj, const std::string& section, const char* key, std::uint64_t& out) {
  const json* v = find(obj, key);
  if (v == nullptr) return;
  if (!v->is_number_unsigned())
    throw ConfigError("config: \"" + section + "." + key + "\" must be a non-negative integer");
  out = v->get<std::uint64_t>();
}

void read_size(const json& obj, const std::string& section, const char* key, std::size_t& out) {
  std::uint64_t v = out;
  read_count(obj, section, key, v);
  out = std::size_t(v);
}

void read_flag(const json& obj, const std::string& section, const char* key, bool& out) {
  const json* v = find(obj, key);
  if (v == nullptr) return;
  if (!v->is_boolean())
    throw ConfigError("config: \"" + section + "." + key + "\" must be a boolean");
  out = v->get<bool>();
}

void read_text(const json& obj, const std::string& section, const char* key, std::string& out) {
  const json* v = find(obj, key);
  if (v == nullptr) return;
  if (!v->is_string())
    throw ConfigError("config: \"" + section + "." + key + "\" must be a string");
  out = v->get<std::string>();
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    device.validate();
    noise.validate();
    calibration.truth().validate();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!(ramsey.detuning > 0.0)) throw ConfigError("config: ramsey.detuning_hz must be positive");
  if (ramsey.n_t < 2) throw ConfigError("config: ramsey.N_t must be at least 2");
  if (!(ramsey.t_max > 0.0)) throw ConfigError("config: ramsey.t_max_s must be positive");
  const double dt = ramsey.t_max / double(ramsey.n_t - 1);
  if (!(dt < 0.5 / ramsey.detuning))
    throw ConfigError("config: ramsey grid undersamples the detuning (raise N_t or lower t_max_s)");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be a JSON object");
  reject_unknown(root, "<top>", {"device", "noise", "calibration", "tomography", "ramsey"});

  ExperimentConfig cfg;

  const json device = require_object(root, "device");
  reject_unknown(device, "device", {"D_hz", "B_t", "gamma_e_hz_per_t", "A_hf_hz", "rabi_freq_hz", "n"});
  read_real(device, "device", "D_hz", cfg.device.zero_field_splitting);
  read_real(device, "device", "B_t", cfg.device.static_field);
  read_real(device, "device", "gamma_e_hz_per_t", cfg.device.gamma_e);
  read_real(device, "device", "A_hf_hz", cfg.device.hyperfine);
  read_real(device, "device", "rabi_freq_hz", cfg.device.rabi_freq);
  read_size(device, "device", "n", cfg.device.n);

  const json noise = require_object(root, "noise");
  reject_unknown(noise, "noise", {"T2_star_s", "T2_s", "enabled"});
  read_real(noise, "noise", "T2_star_s", cfg.noise.t2_star);
  read_real(noise, "noise", "T2_s", cfg.noise.t2);
  read_flag(noise, "noise", "enabled", cfg.noise.enabled);

  const json calibration = require_object(root, "calibration");
  reject_unknown(calibration, "calibration", {"r_max", "r_min", "shots"});
  read_real(calibration, "calibration", "r_max", cfg.calibration.r_max);
  read_real(calibration, "calibration", "r_min", cfg.calibration.r_min);
  read_count(calibration, "calibration", "shots", cfg.calibration.shots);

  const json tomography = require_object(root, "tomography");
  reject_unknown(tomography, "tomography", {"state", "shots_per_setting", "seed", "projection"});
  read_text(tomography, "tomography", "state", cfg.tomography.state);
  read_count(tomography, "tomography", "shots_per_setting", cfg.tomography.shots_per_setting);
  read_count(tomography, "tomography", "seed", cfg.tomography.seed);
  read_flag(tomography, "tomography", "projection", cfg.tomography.projection);

  const json ramsey = require_object(root, "ramsey");
  reject_unknown(ramsey, "ramsey", {"detuning_hz", "N_t", "N_fid", "t_max_s"});
  read_real(ramsey, "ramsey", "detuning_hz", cfg.ramsey.detuning);
  read_size(ramsey, "ramsey", "N_t", cfg.ramsey.n_t);
  read_size(ramsey, "ramsey", "N_fid", cfg.ramsey.n_fid);
  read_real(ramsey, "ramsey", "t_max_s", cfg.ramsey.t_max);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return json{
      {"device",
       {{"D_hz", cfg.device.zero_field_splitting},
        {"B_t", cfg.device.static_field},
        {"gamma_e_hz_per_t", cfg.device.gamma_e},
        {"A_hf_hz", cfg.device.hyperfine},
        {"rabi_freq_hz", cfg.device.rabi_freq},
        {"n", cfg.device.n}}},
      {"noise",
       {{"T2_star_s", cfg.noise.t2_star}, {"T2_s", cfg.noise.t2}, {"enabled", cfg.noise.enabled}}},
      {"calibration",
       {{"r_max", cfg.calibration.r_max},
        {"r_min", cfg.calibration.r_min},
        {"shots", cfg.calibration.shots}}},
      {"tomography",
       {{"state", cfg.tomography.state},
        {"shots_per_setting", cfg.tomography.shots_per_setting},
        {"seed", cfg.tomography.seed},
        {"projection", cfg.tomography.projection}}},
      {"ramsey",
       {{"detuning_hz", cfg.ramsey.detuning},
        {"N_t", cfg.ramsey.n_t},
        {"N_fid", cfg.ramsey.n_fid},
        {"t_max_s", cfg.ramsey.t_max}}}};
}

}  // namespace qst
