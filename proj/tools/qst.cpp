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
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qst/config.hpp"
#include "qst/errors.hpp"
#include "qst/planner.hpp"
#include "qst/ramsey.hpp"
#include "qst/report.hpp"
#include "qst/states.hpp"
#include "qst/tomography.hpp"

namespace {

using nlohmann::json;
using namespace qst;

int verbosity() {
  const char* env = std::getenv("QST_LOG");
  if (env == nullptr) return 1;
  const std::string v(env);
  if (v == "quiet") return 0;
  if (v == "debug") return 2;
  return 1;
}

void vlog(int level, const std::string& msg) {
  if (verbosity() >= level) std::cerr << "qst: " << msg << "\n";
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::size_t effective_fid_count(const ExperimentConfig& cfg, std::size_t n) {
  return cfg.ramsey.n_fid != 0 ? cfg.ramsey.n_fid : default_fid_count(n);
}

ReadoutCalibration estimate_calibration(const ExperimentConfig& cfg, std::uint64_t seed_root) {
  const ReadoutCalibration truth = cfg.calibration.truth();
  if (cfg.calibration.shots == 0) return truth;
  return calibrate(cfg.device, truth, cfg.calibration.shots, derive_seed(seed_root, 1));
}

json budget_json(const BudgetReport& rep, std::size_t n_t, std::size_t n_fid) {
  return json{{"n", rep.n},
              {"settings_fast", rep.settings_fast},
              {"settings_ramsey", rep.settings_ramsey},
              {"ratio", rep.ratio},
              {"N_t", n_t},
              {"N_fid", n_fid}};
}

int cmd_calibrate(const ExperimentConfig& cfg, const std::string& out_dir) {
  const std::uint64_t seed = cfg.tomography.seed;
  const ReadoutCalibration truth = cfg.calibration.truth();
  const ReadoutCalibration est = estimate_calibration(cfg, seed);
  const json payload{
      {"command", "calibrate"},
      {"config", config_to_json(cfg)},
      {"calibration",
       {{"r_max", est.r_max},
        {"r_min", est.r_min},
        {"delta_r", est.delta()},
        {"shots", cfg.calibration.shots},
        {"truth", {{"r_max", truth.r_max}, {"r_min", truth.r_min}}},
        {"estimation_error",
         {{"r_max", est.r_max - truth.r_max}, {"r_min", est.r_min - truth.r_min}}}}}};
  const std::string path = out_path(out_dir, "calibration.json");
  atomic_write(path, bundle(payload).dump(2) + "\n");
  std::cout << "calibration: r_max=" << est.r_max << " r_min=" << est.r_min
            << " delta_r=" << est.delta() << "\nwrote " << path << "\n";
  return 0;
}

int cmd_tomo(const ExperimentConfig& cfg, const std::string& out_dir) {
  StateLabel label;
  try {
    label = parse_state_label(cfg.tomography.state);
  } catch (const UsageError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const std::size_t n = state_label_qubits(label);
  if (cfg.device.n != n)
    throw ConfigError("config: state \"" + cfg.tomography.state + "\" needs device.n = " +
                      std::to_string(n) + ", configured " + std::to_string(cfg.device.n));

  const std::uint64_t seed = cfg.tomography.seed;
  const ReadoutCalibration truth = cfg.calibration.truth();
  const ReadoutCalibration est = estimate_calibration(cfg, seed);
  vlog(2, "calibration estimate: r_max=" + std::to_string(est.r_max) +
              " r_min=" + std::to_string(est.r_min));

  const std::vector<ConversionPlan> schedule = plan_full_schedule(n);
  const PreparedState prep = make_prepared(label);
  const TomographyRun run = run_protocol(prep, schedule, cfg.device, cfg.noise, truth, est,
                                         cfg.tomography.shots_per_setting, derive_seed(seed, 2));
  if (verbosity() >= 2)
    for (const MeasurementRecord& rec : run.records)
      vlog(2, "setting " + rec.label.str() + " rate=" + std::to_string(rec.rate));

  const Reconstruction rec = reconstruct(run);
  const double fid_raw = fidelity(prep.ideal, rec.raw);
  const double rms_raw = rms_imag(rec.raw.mat);

  json coeffs = json::object();
  for (std::size_t idx = 0; idx < rec.coeffs.coeffs.size(); ++idx)
    coeffs[PauliLabel::from_index(idx, n).str()] = rec.coeffs.coeffs[idx];

  const std::size_t n_fid = effective_fid_count(cfg, n);
  json payload{{"command", "tomo"},
               {"config", config_to_json(cfg)},
               {"state", cfg.tomography.state},
               {"settings", run.records.size()},
               {"coefficients", std::move(coeffs)},
               {"fidelity", {{"raw", fid_raw}}},
               {"rms_imag", {{"raw", rms_raw}}},
               {"reconstruction", {{"raw", matrix_to_json(rec.raw.mat)}}},
               {"budget", budget_json(budget(n, cfg.ramsey.n_t, n_fid), cfg.ramsey.n_t, n_fid)}};
  if (cfg.tomography.projection) {
    payload["fidelity"]["physical"] = fidelity(prep.ideal, rec.physical);
    payload["rms_imag"]["physical"] = rms_imag(rec.physical.mat);
    payload["reconstruction"]["physical"] = matrix_to_json(rec.physical.mat);
  }

  atomic_write(out_path(out_dir, "result.json"), bundle(payload).dump(2) + "\n");
  atomic_write(out_path(out_dir, "records.jsonl"), records_jsonl(run));
  atomic_write(out_path(out_dir, "matrix_raw.csv"), matrix_csv(rec.raw.mat));
  if (cfg.tomography.projection)
    atomic_write(out_path(out_dir, "matrix_physical.csv"), matrix_csv(rec.physical.mat));

  std::cout << "state " << cfg.tomography.state << ": fidelity(raw)=" << fid_raw;
  if (cfg.tomography.projection)
    std::cout << " fidelity(physical)=" << fidelity(prep.ideal, rec.physical);
  std::cout << " rms_imag(raw)=" << rms_raw << "\nwrote " << out_path(out_dir, "result.json")
            << "\n";
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, const std::string& out_dir) {
  const std::size_t n = cfg.device.n;
  const std::size_t n_fid = effective_fid_count(cfg, n);
  const BudgetReport rep = budget(n, cfg.ramsey.n_t, n_fid);

  // Monte-Carlo on the electron coherence: both protocols estimate c_X of
  // |+> with the same photons per acquired data point.
  DeviceParams electron = cfg.device;
  electron.n = 1;
  const std::uint64_t seed = cfg.tomography.seed;
  const std::uint64_t shots = cfg.tomography.shots_per_setting;
  const ReadoutCalibration truth = cfg.calibration.truth();
  const ReadoutCalibration est = estimate_calibration(cfg, seed);
  const PreparedState prep = make_prepared(StateLabel::Plus);
  const std::vector<ConversionPlan> schedule = plan_full_schedule(1);
  const std::vector<double> times = uniform_times(cfg.ramsey.n_t, cfg.ramsey.t_max);
  PauliLabel x_label = PauliLabel::parse("X");
  PauliLabel z_label = PauliLabel::parse("Z");

  constexpr std::size_t kReps = 24;
  std::vector<double> cx_tomo, cx_ramsey, fid_tomo, fid_ramsey;
  for (std::size_t k = 0; k < kReps; ++k) {
    const TomographyRun run = run_protocol(prep, schedule, electron, cfg.noise, truth, est, shots,
                                           derive_seed(seed, 100 + k));
    const Reconstruction rec = reconstruct(run);
    cx_tomo.push_back(rec.coeffs.at(x_label));
    fid_tomo.push_back(fidelity(prep.ideal, rec.raw));

    const FidTrace trace = simulate_fid(prep.ideal, cfg.ramsey.detuning, times, electron,
                                        cfg.noise, truth, shots, derive_seed(seed, 200 + k));
    const QuadratureFit fit = fit_quadratures(trace, est);
    cx_ramsey.push_back(fit.c_x);

    // Populations come from one extra no-pulse acquisition; together with the
    // two fitted quadratures this completes the single-qubit state.
    const MeasurementRecord pop = simulate_counts(prep.ideal, truth, shots,
                                                  derive_seed(seed, 300 + k), z_label, 1);
    PauliDecomposition d = PauliDecomposition::zeros(1);
    d.coeffs[0] = 0.5;
    d.at(x_label) = fit.c_x;
    d.at(PauliLabel::parse("Y")) = fit.c_y;
    d.at(z_label) = extract_coefficient(pop, est, 1);
    fid_ramsey.push_back(fidelity(prep.ideal, recompose(d)));
    vlog(2, "rep " + std::to_string(k) + ": c_x tomo=" + std::to_string(cx_tomo.back()) +
                " ramsey=" + std::to_string(cx_ramsey.back()));
  }

  const auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
  };
  const auto std_err = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / double(v.size() - 1) / double(v.size()));
  };
  const double mt = mean(cx_tomo), mr = mean(cx_ramsey);
  const double st = std_err(cx_tomo), sr = std_err(cx_ramsey);
  const double z = std::abs(mt - mr) / std::sqrt(st * st + sr * sr);

  const json payload{
      {"command", "compare"},
      {"config", config_to_json(cfg)},
      {"budget", budget_json(rep, cfg.ramsey.n_t, n_fid)},
      {"monte_carlo",
       {{"repetitions", kReps},
        {"shots_per_point", shots},
        {"true_c_x", 0.5},
        {"tomography",
         {{"settings", rep.settings_fast},
          {"mean_c_x", mt},
          {"se_c_x", st},
          {"mean_fidelity_raw", mean(fid_tomo)}}},
        {"ramsey",
         {{"settings", rep.settings_ramsey},
          {"mean_c_x", mr},
          {"se_c_x", sr},
          {"mean_fidelity", mean(fid_ramsey)}}},
        {"z_mutual", z}}}};
  atomic_write(out_path(out_dir, "compare.json"), bundle(payload).dump(2) + "\n");

  std::string csv = "method,settings,c_x_mean,c_x_se,fidelity\n";
  csv += "fast," + std::to_string(rep.settings_fast) + "," + std::to_string(mt) + "," +
         std::to_string(st) + "," + std::to_string(mean(fid_tomo)) + "\n";
  csv += "ramsey," + std::to_string(rep.settings_ramsey) + "," + std::to_string(mr) + "," +
         std::to_string(sr) + "," + std::to_string(mean(fid_ramsey)) + "\n";
  atomic_write(out_path(out_dir, "compare.csv"), csv);

  std::cout << "n=" << n << ": settings " << rep.settings_ramsey << " (ramsey) vs "
            << rep.settings_fast << " (fast), ratio=" << rep.ratio << "\n"
            << "c_x: tomo " << mt << "+-" << st << ", ramsey " << mr << "+-" << sr
            << " (z=" << z << ")\nwrote " << out_path(out_dir, "compare.json") << "\n";
  return 0;
}

int cmd_plan(const ExperimentConfig& cfg, const std::string& out_dir, std::size_t n_override) {
  const std::size_t n = n_override != 0 ? n_override : cfg.device.n;
  const std::vector<ConversionPlan> schedule = plan_full_schedule(n);
  json plans = schedule_to_json(schedule);

  if (n <= 2) {
    DeviceParams p = cfg.device;
    p.n = n;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      try {
        const PulseCompilation comp = compile_to_pulses(schedule[i], p);
        json steps = json::array();
        for (const PulseStep& s : comp.sequence.steps) {
          if (s.kind == PulseStep::Kind::Pulse)
            steps.push_back(json{{"type", "pulse"},
                                 {"axis", s.rotation.axis == Axis::X ? "X" : "Y"},
                                 {"angle_deg", std::llround(s.rotation.angle * 180.0 / M_PI)},
                                 {"duration_s", s.duration}});
          else
            steps.push_back(json{{"type", "delay"}, {"duration_s", s.duration}});
        }
        plans[i]["pulses"] = std::move(steps);
        plans[i]["conversion_fidelity"] = comp.conversion_fidelity;
      } catch (const CompilationError& e) {
        plans[i]["compile_error"] = e.what();
      }
    }
  }

  const json payload{{"command", "plan"}, {"n", n}, {"plans", std::move(plans)}};
  atomic_write(out_path(out_dir, "plans.json"), bundle(payload).dump(2) + "\n");
  std::cout << "n=" << n << ": " << schedule.size() << " plans, all verified\nwrote "
            << out_path(out_dir, "plans.json") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-register state tomography: readout conversion planning, simulation, "
               "reconstruction, and the Ramsey baseline"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string config_path;
  std::string state_override;
  std::string out_dir = ".";
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  std::size_t plan_n = 0;

  app.add_option("--config", config_path, "JSON config file (defaults apply when omitted)");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed_override, "override tomography.seed");

  CLI::App* calibrate = app.add_subcommand("calibrate", "estimate readout reference rates");
  CLI::App* tomo = app.add_subcommand("tomo", "run the tomography protocol on a named state");
  tomo->add_option("--state", state_override, "state label (zero|one|plus|minus|s1..s4)");
  CLI::App* compare = app.add_subcommand("compare", "budget and accuracy versus the Ramsey baseline");
  CLI::App* plan = app.add_subcommand("plan", "emit the conversion schedule");
  plan->add_option("--n", plan_n, "register size (defaults to device.n)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{3}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  seed_given = seed_opt->count() > 0;

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
      vlog(2, "loaded config " + config_path);
    } else {
      vlog(2, "using built-in defaults");
    }
    if (!state_override.empty()) cfg.tomography.state = state_override;
    if (seed_given) cfg.tomography.seed = seed_override;
    cfg.validate();

    if (calibrate->parsed()) return cmd_calibrate(cfg, out_dir);
    if (tomo->parsed()) return cmd_tomo(cfg, out_dir);
    if (compare->parsed()) return cmd_compare(cfg, out_dir);
    return cmd_plan(cfg, out_dir, plan_n);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
