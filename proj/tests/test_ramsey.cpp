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
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qst/errors.hpp"
#include "qst/ramsey.hpp"
#include "qst/tomography.hpp"

using qst::DensityMatrix;
using qst::DeviceParams;
using qst::FidTrace;
using qst::NoiseParams;
using qst::QuadratureFit;
using qst::ReadoutCalibration;
using qst::StateLabel;
using qst::Vector;

namespace {

const ReadoutCalibration kCalib{0.04, 0.028};
const double kDetuning = 2e6;

DeviceParams params1() {
  DeviceParams p;
  p.n = 1;
  return p;
}

NoiseParams no_noise() {
  NoiseParams noise;
  noise.enabled = false;
  return noise;
}

DensityMatrix named(StateLabel label) { return qst::make_prepared(label).ideal; }

FidTrace exact_trace(const DensityMatrix& state, std::size_t n_t = 200, double t_max = 4e-6) {
  return qst::simulate_fid(state, kDetuning, qst::uniform_times(n_t, t_max), params1(),
                           no_noise(), kCalib, 0, 1);
}

}  // namespace

TEST_CASE("uniform grid endpoints and spacing") {
  const auto t = qst::uniform_times(5, 4e-6);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == doctest::Approx(4e-6).epsilon(1e-15));
  for (std::size_t i = 1; i < t.size(); ++i)
    CHECK(t[i] - t[i - 1] == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK_THROWS_AS(qst::uniform_times(1, 4e-6), qst::UsageError);
  CHECK_THROWS_AS(qst::uniform_times(8, 0.0), qst::UsageError);
}

TEST_CASE("noiseless fringe of the plus state") {
  // <X> = 1 rotates as sin under the detuned frame with the X_90 readout:
  // rate(t) = r_min + dr (1/2 + (1/2) sin(2 pi delta t)).
  const FidTrace trace = exact_trace(named(StateLabel::Plus));
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double phase = 2.0 * M_PI * kDetuning * trace.times[i];
    const double expect = kCalib.r_min + kCalib.delta() * (0.5 + 0.5 * std::sin(phase));
    CHECK(trace.rates[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("noiseless fringe of the minus state uses the cosine quadrature") {
  const FidTrace trace = exact_trace(named(StateLabel::Minus));
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double phase = 2.0 * M_PI * kDetuning * trace.times[i];
    const double expect = kCalib.r_min + kCalib.delta() * (0.5 - 0.5 * std::cos(phase));
    CHECK(trace.rates[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("diagonal states give a flat trace") {
  const FidTrace trace = exact_trace(named(StateLabel::Zero));
  const double mid = kCalib.r_min + 0.5 * kCalib.delta();
  for (double r : trace.rates) CHECK(r == doctest::Approx(mid).epsilon(1e-12));
}

TEST_CASE("dephasing shrinks the fringe with the gaussian envelope") {
  NoiseParams noise;  // enabled, T2* = 40 us
  const auto times = qst::uniform_times(50, 4e-6);
  const FidTrace trace = qst::simulate_fid(named(StateLabel::Plus), kDetuning, times,
                                           params1(), noise, kCalib, 0, 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double env = std::exp(-std::pow(times[i] / noise.t2_star, 2.0));
    const double phase = 2.0 * M_PI * kDetuning * times[i];
    const double expect = kCalib.r_min + kCalib.delta() * (0.5 + 0.5 * env * std::sin(phase));
    CHECK(trace.rates[i] == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("grid validation") {
  const DensityMatrix plus = named(StateLabel::Plus);
  // Two points over 4 us cannot resolve a 2 MHz detuning.
  CHECK_THROWS_AS(qst::simulate_fid(plus, kDetuning, qst::uniform_times(2, 4e-6), params1(),
                                    no_noise(), kCalib, 0, 1),
                  qst::UsageError);
  std::vector<double> warped = qst::uniform_times(100, 4e-6);
  warped[10] += 3e-8;
  CHECK_THROWS_AS(qst::simulate_fid(plus, kDetuning, warped, params1(), no_noise(), kCalib, 0, 1),
                  qst::UsageError);
  CHECK_THROWS_AS(qst::simulate_fid(plus, -2e6, qst::uniform_times(100, 4e-6), params1(),
                                    no_noise(), kCalib, 0, 1),
                  qst::UsageError);
}

TEST_CASE("quadrature fit recovers exact coefficients") {
  SUBCASE("plus state: pure sine") {
    const QuadratureFit fit = qst::fit_quadratures(exact_trace(named(StateLabel::Plus)), kCalib);
    CHECK(fit.c_x == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fit.c_y == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.sigma_x < 1e-9);
    CHECK(fit.sigma_y < 1e-9);
  }
  SUBCASE("minus state: pure negative cosine") {
    const QuadratureFit fit = qst::fit_quadratures(exact_trace(named(StateLabel::Minus)), kCalib);
    CHECK(fit.c_x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.c_y == doctest::Approx(-0.5).epsilon(1e-9));
  }
  SUBCASE("ground state: no fringe at all") {
    const QuadratureFit fit = qst::fit_quadratures(exact_trace(named(StateLabel::Zero)), kCalib);
    CHECK(fit.c_x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.c_y == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("fit rejects unusable traces") {
  FidTrace trace = exact_trace(named(StateLabel::Plus));

  FidTrace short_trace = trace;
  short_trace.times.resize(4);
  short_trace.rates.resize(4);
  CHECK_THROWS_AS(qst::fit_quadratures(short_trace, kCalib), qst::UsageError);

  FidTrace no_detuning = trace;
  no_detuning.detuning = 0.0;
  CHECK_THROWS_AS(qst::fit_quadratures(no_detuning, kCalib), qst::UsageError);

  FidTrace mismatched = trace;
  mismatched.rates.pop_back();
  CHECK_THROWS_AS(qst::fit_quadratures(mismatched, kCalib), qst::UsageError);

  // Less than one fringe period over the whole span is under-determined.
  FidTrace narrow = trace;
  narrow.detuning = 1e4;
  CHECK_THROWS_AS(qst::fit_quadratures(narrow, kCalib), qst::UsageError);

  const ReadoutCalibration flat{0.03, 0.03};
  CHECK_THROWS_AS(qst::fit_quadratures(trace, flat), qst::CalibrationError);
}

TEST_CASE("sampled fit sits within its own error bars") {
  const auto times = qst::uniform_times(200, 4e-6);
  const std::uint64_t shots = 50000;
  const FidTrace trace = qst::simulate_fid(named(StateLabel::Plus), kDetuning, times, params1(),
                                           no_noise(), kCalib, shots, 17);
  const QuadratureFit fit = qst::fit_quadratures(trace, kCalib);
  CHECK(fit.sigma_x > 0.0);
  CHECK(fit.sigma_y > 0.0);
  CHECK(std::abs(fit.c_x - 0.5) < 5.0 * fit.sigma_x);
  CHECK(std::abs(fit.c_y - 0.0) < 5.0 * fit.sigma_y);
}

TEST_CASE("sampled traces are deterministic per seed") {
  const auto times = qst::uniform_times(50, 4e-6);
  const FidTrace a = qst::simulate_fid(named(StateLabel::Plus), kDetuning, times, params1(),
                                       no_noise(), kCalib, 1000, 3);
  const FidTrace b = qst::simulate_fid(named(StateLabel::Plus), kDetuning, times, params1(),
                                       no_noise(), kCalib, 1000, 3);
  const FidTrace c = qst::simulate_fid(named(StateLabel::Plus), kDetuning, times, params1(),
                                       no_noise(), kCalib, 1000, 4);
  CHECK(a.rates == b.rates);
  CHECK(a.rates != c.rates);
}

TEST_CASE("dominant frequency finds the detuning within one bin") {
  const FidTrace trace = exact_trace(named(StateLabel::Plus), 200, 4e-6);
  const double dt = trace.times[1] - trace.times[0];
  const double bin = 1.0 / (double(trace.times.size()) * dt);
  CHECK(std::abs(qst::dominant_frequency(trace) - kDetuning) <= bin);
}

TEST_CASE("budget arithmetic") {
  const auto report = qst::budget(2, 300, 5);
  CHECK(report.settings_fast == 15);
  CHECK(report.settings_ramsey == 1500);
  CHECK(report.ratio == doctest::Approx(100.0).epsilon(1e-12));
  CHECK_THROWS_AS(qst::budget(0, 300, 5), qst::UsageError);
  CHECK_THROWS_AS(qst::budget(2, 0, 5), qst::UsageError);
  CHECK_THROWS_AS(qst::budget(2, 300, 0), qst::UsageError);
}

TEST_CASE("default FID counts cover all coefficients") {
  CHECK(qst::default_fid_count(1) == 2);
  CHECK(qst::default_fid_count(2) == 8);
  CHECK(qst::default_fid_count(3) == 32);
}

TEST_CASE("fit agrees with tomography on the same state") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix state = helpers::random_physical(1, rng);
    const QuadratureFit fit = qst::fit_quadratures(exact_trace(state), kCalib);
    const qst::PauliDecomposition d = qst::decompose(state);
    CHECK(fit.c_x == doctest::Approx(d.at(qst::PauliLabel::parse("X"))).epsilon(1e-8));
    CHECK(fit.c_y == doctest::Approx(d.at(qst::PauliLabel::parse("Y"))).epsilon(1e-8));
  }
}
