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

#include "json.hpp"
#include "qst/planner.hpp"
#include "qst/ramsey.hpp"
#include "qst/tomography.hpp"

namespace qst {

// Writes content to path via a temporary file and rename, so readers never
// observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

std::string timestamp_utc();

// {"header": {"timestamp": ...}, "payload": ...}; everything derived from
// config + seed lives in the payload, so payload bytes are reproducible.
nlohmann::json bundle(nlohmann::json payload);

// {"re": [[...]], "im": [[...]]}
nlohmann::json matrix_to_json(const Matrix& m);

// Bar-chart-ready long form: header row, then one "row,col,re,im" line per
// matrix entry.
std::string matrix_csv(const Matrix& m);

// "t_seconds,rate,shots" per delay point.
std::string trace_csv(const FidTrace& trace);

// One entry per plan: label, sign, gate strings, exact verification score.
nlohmann::json schedule_to_json(const std::vector<ConversionPlan>& plans);

// One JSON object per line, in record order.
std::string records_jsonl(const TomographyRun& run);

}  // namespace qst
