/*
 * Copyright (C) 2026 The sdklint Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SDKLINT_REPORT_H_
#define SDKLINT_REPORT_H_

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "sdklint/analyzer.h"

namespace sdklint {

// One-line JSON with a fixed key order. An unbounded max_level is written as
// 100000 next to "unbounded": true. The per-API breakdown is large, so the
// corpus results file leaves it out.
std::string ReportToJson(const AnalysisReport& report, bool include_breakdown);

// The fields corpus statistics need, recoverable from either a live report or
// a results.jsonl line.
struct ReportSummary {
  std::string app_id;
  DeclaredSdk declared;
  int min_level = 1;
  int min_level_with_lib = 1;
  size_t api_call_count = 0;
  // Present inconsistency kinds with their offending occurrence totals.
  std::map<InconsistencyKind, size_t> inconsistencies;
  size_t vulnerability_count = 0;
  bool vulnerable_null_target = false;
  int lag = 0;
  std::set<OutlierFlag> outlier_flags;

  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

ReportSummary Summarize(const AnalysisReport& report);

// Throws kSchemaViolation if the line is not a report object.
ReportSummary SummaryFromJson(std::string_view line);

}  // namespace sdklint

#endif  // SDKLINT_REPORT_H_
