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

#include "qst/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qst/errors.hpp"

namespace qst {

namespace {

using nlohmann::json;

void append_real(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write \"" + tmp.string() + "\"");
    out << content;
    out.flush();
    if (!out) throw UsageError("short write to \"" + tmp.string() + "\"");
  }
  fs::rename(tmp, target);
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json bundle(nlohmann::json payload) {
  return json{{"header", {{"timestamp", timestamp_utc()}}}, {"payload", std::move(payload)}};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::string matrix_csv(const Matrix& m) {
  std::string out = "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      append_real(out, m(i, j).real());
      out += ',';
      append_real(out, m(i, j).imag());
      out += '\n';
    }
  return out;
}

std::string trace_csv(const FidTrace& trace) {
  std::string out = "t_seconds,rate,shots\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    append_real(out, trace.times[i]);
    out += ',';
    append_real(out, trace.rates[i]);
    out += ',';
    out += std::to_string(trace.shots);
    out += '\n';
  }
  return out;
}

nlohmann::json schedule_to_json(const std::vector<ConversionPlan>& plans) {
  json arr = json::array();
  for (const ConversionPlan& plan : plans) {
    json gates = json::array();
    for (const Gate& g : plan.gates) gates.push_back(g.str());
    arr.push_back(json{{"label", plan.target.str()},
                       {"sign", plan.sign},
                       {"gates", std::move(gates)},
                       {"verify", verify_plan(plan)}});
  }
  return arr;
}

std::string records_jsonl(const TomographyRun& run) {
  std::string out;
  for (const MeasurementRecord& rec : run.records) {
    const json line{{"label", rec.label.str()},
                    {"sign", rec.sign},
                    {"shots", rec.shots},
                    {"photons", rec.photons},
                    {"rate", rec.rate},
                    {"calib", {{"r_max", rec.calib.r_max}, {"r_min", rec.calib.r_min}}}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace qst
