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

#include "qst/ramsey.hpp"

#include <cmath>
#include <complex>

#include "qst/errors.hpp"

namespace qst {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_uniform(const std::vector<double>& times, double detuning_hz) {
  if (times.size() < 2) throw UsageError("fid: need at least two delay points");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw UsageError("fid: delays must be strictly increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * dt + 1e-18)
      throw UsageError("fid: delay grid must be uniform");
  }
  if (detuning_hz > 0.0 && !(dt < 0.5 / detuning_hz))
    throw UsageError("fid: grid spacing undersamples the detuning (Nyquist)");
}

}  // namespace

std::vector<double> uniform_times(std::size_t n_t, double t_max) {
  if (n_t < 2) throw UsageError("uniform_times: need at least two points");
  if (!(t_max > 0.0)) throw UsageError("uniform_times: t_max must be positive");
  std::vector<double> t(n_t);
  for (std::size_t i = 0; i < n_t; ++i) t[i] = t_max * double(i) / double(n_t - 1);
  return t;
}

FidTrace simulate_fid(const DensityMatrix& state, double detuning_hz,
                      const std::vector<double>& times, const DeviceParams& p,
                      const NoiseParams& noise, const ReadoutCalibration& calib,
                      std::uint64_t shots, std::uint64_t seed) {
  p.validate();
  noise.validate();
  calib.validate();
  if (state.n != p.n) throw UsageError("simulate_fid: state size does not match device");
  if (!(detuning_hz >= 0.0) || !std::isfinite(detuning_hz))
    throw UsageError("simulate_fid: detuning must be finite and non-negative");
  check_uniform(times, detuning_hz);

  const Matrix h = qubit_hamiltonian(p, detuning_hz);
  const Rotation readout{Axis::X, M_PI / 2.0, 0};
  FidTrace trace;
  trace.times = times;
  trace.detuning = detuning_hz;
  trace.shots = shots;
  trace.rates.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    DensityMatrix st = free_evolve_under(state, times[i], h, noise);
    st = apply_pulse(st, readout, p);
    trace.rates.push_back(
        simulate_counts(st, calib, shots, derive_seed(seed, i)).rate);
  }
  return trace;
}

QuadratureFit fit_quadratures(const FidTrace& trace, const ReadoutCalibration& calib) {
  if (!(calib.delta() > 0.0))
    throw CalibrationError("fit_quadratures: readout contrast must be positive");
  const std::size_t n_pts = trace.times.size();
  if (n_pts < 8 || trace.rates.size() != n_pts)
    throw UsageError("fit_quadratures: need at least 8 sampled points");
  if (!(trace.detuning > 0.0))
    throw UsageError("fit_quadratures: zero detuning leaves the quadratures degenerate");
  if (!((trace.times.back() - trace.times.front()) * trace.detuning >= 1.0))
    throw UsageError("fit_quadratures: trace must span at least one oscillation period");

  Eigen::MatrixXd a(Eigen::Index(n_pts), 3);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(Eigen::Index(n_pts));
  for (std::size_t i = 0; i < n_pts; ++i) {
    const double phase = kTwoPi * trace.detuning * trace.times[i];
    a(Eigen::Index(i), 0) = 1.0;
    a(Eigen::Index(i), 1) = std::cos(phase);
    a(Eigen::Index(i), 2) = std::sin(phase);
    y(Eigen::Index(i)) = trace.rates[i];
  }
  const Eigen::Matrix3d ata = a.transpose() * a;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(ata);
  if (!lu.isInvertible()) throw UsageError("fit_quadratures: design matrix is rank-deficient");
  const Eigen::Vector3d theta = lu.solve(a.transpose() * y);

  const Eigen::VectorXd resid = y - a * theta;
  const double dof = double(n_pts) - 3.0;
  const double s2 = resid.squaredNorm() / dof;
  const Eigen::Matrix3d cov = s2 * lu.inverse();

  QuadratureFit fit;
  fit.c_x = theta(2) / calib.delta();
  fit.c_y = theta(1) / calib.delta();
  fit.sigma_x = std::sqrt(std::max(cov(2, 2), 0.0)) / calib.delta();
  fit.sigma_y = std::sqrt(std::max(cov(1, 1), 0.0)) / calib.delta();
  return fit;
}

double dominant_frequency(const FidTrace& trace) {
  const std::size_t n_pts = trace.times.size();
  if (n_pts < 4 || trace.rates.size() != n_pts)
    throw UsageError("dominant_frequency: need at least 4 sampled points");
  const double dt = trace.times[1] - trace.times[0];
  double best_mag = -1.0;
  std::size_t best_k = 1;
  for (std::size_t k = 1; k <= n_pts / 2; ++k) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t j = 0; j < n_pts; ++j) {
      const double ang = -kTwoPi * double(k) * double(j) / double(n_pts);
      s += trace.rates[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    if (std::abs(s) > best_mag) {
      best_mag = std::abs(s);
      best_k = k;
    }
  }
  return double(best_k) / (double(n_pts) * dt);
}

BudgetReport budget(std::size_t n, std::size_t n_t, std::size_t n_fid) {
  if (n < 1 || n_t < 1 || n_fid < 1) throw UsageError("budget: all counts must be at least 1");
  BudgetReport report;
  report.n = n;
  report.settings_fast = (std::size_t{1} << (2 * n)) - 1;
  report.settings_ramsey = n_fid * n_t;
  report.ratio = double(report.settings_ramsey) / double(report.settings_fast);
  return report;
}

std::size_t default_fid_count(std::size_t n) {
  if (n < 1) throw UsageError("default_fid_count: register size must be positive");
  const std::size_t coeffs = (std::size_t{1} << (2 * n)) - 1;
  return (coeffs + 1) / 2;
}

}  // namespace qst
