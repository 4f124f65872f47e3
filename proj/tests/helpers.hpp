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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qst/states.hpp"

namespace helpers {

inline qst::Vector random_ket(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index d = Eigen::Index(1) << n;
  qst::Vector psi(d);
  for (Eigen::Index i = 0; i < d; ++i) psi(i) = qst::Complex(gauss(rng), gauss(rng));
  psi.normalize();
  return psi;
}

inline qst::DensityMatrix random_pure(int n, std::mt19937_64& rng) {
  return qst::DensityMatrix::pure(random_ket(n, rng));
}

// Full-rank mixed state from a normalized Ginibre product G G^dag / tr.
inline qst::DensityMatrix random_physical(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index d = Eigen::Index(1) << n;
  qst::Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = qst::Complex(gauss(rng), gauss(rng));
  qst::Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return qst::DensityMatrix::physical_state(std::move(rho));
}

// Hermitian unit-trace matrix that is generally not positive: a physical
// state plus a traceless Hermitian perturbation.
inline qst::DensityMatrix random_perturbed(int n, double strength, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index d = Eigen::Index(1) << n;
  qst::Matrix h(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) h(i, j) = qst::Complex(gauss(rng), gauss(rng));
  h = qst::Matrix(0.5 * (h + h.adjoint()));
  h -= qst::Matrix::Identity(d, d) * (h.trace().real() / double(d));
  qst::Matrix m = random_physical(n, rng).mat + strength * h;
  return qst::DensityMatrix::raw(std::move(m));
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path fresh_dir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("qst_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

// Runs the installed CLI binary with the given arguments, capturing both
// streams. `env_prefix` may hold e.g. "QST_LOG=debug ".
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::string& env_prefix = "") {
  const auto dir = fresh_dir("cli");
  const auto out_path = dir / "stdout.txt";
  const auto err_path = dir / "stderr.txt";
  std::string cmd = env_prefix + shell_quote(QST_BIN);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + shell_quote(out_path.string()) + " 2> " + shell_quote(err_path.string());
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  std::filesystem::remove_all(dir);
  return r;
}

inline std::filesystem::path write_config(const std::filesystem::path& dir,
                                          const std::string& json) {
  const auto p = dir / "config.json";
  std::ofstream out(p, std::ios::binary);
  out << json;
  return p;
}

}  // namespace helpers
