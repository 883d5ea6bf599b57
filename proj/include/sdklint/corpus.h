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

#ifndef SDKLINT_CORPUS_H_
#define SDKLINT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdklint/analyzer.h"
#include "sdklint/api_db.h"
#include "sdklint/report.h"

namespace sdklint {

// Counts by level for defined values; `absent` counts apps without one.
struct Histogram {
  std::map<int, size_t> buckets;
  size_t absent = 0;

  size_t Total() const;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// (value, cumulative fraction) steps, ascending by value.
using Cdf = std::vector<std::pair<int, double>>;

Cdf MakeCdf(std::vector<int> values);

// Effective run settings, echoed into config.json and stats.json.
struct RunSettings {
  std::string db_digest;
  int latest = 1;
  int threshold = 5;
  std::vector<std::string> prefixes;
  std::vector<VulnRule> rules;

  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

RunSettings MakeRunSettings(const ApiLevelDb& db, const AnalyzerConfig& config);
std::string RunSettingsToJson(const RunSettings& settings);
// Throws kSchemaViolation.
RunSettings RunSettingsFromJson(std::string_view text);

struct CorpusStats {
  size_t total = 0;
  size_t analyzed_count = 0;
  size_t multiple_apk_count = 0;
  size_t failure_count = 0;
  // Apps leaving min / target / max undeclared.
  size_t nondefined_min = 0;
  size_t nondefined_target = 0;
  size_t nondefined_max = 0;
  Histogram min_distribution;     // declared values only
  Histogram target_distribution;  // declared values only
  Cdf lag_cdf;                    // outlier-flagged apps left out
  size_t lag_excluded = 0;
  Cdf api_call_count_cdf;
  Histogram min_level_with_lib;
  Histogram min_level_without_lib;
  // Apps with MinBelowMinLevel whose offending calls reach each threshold.
  std::map<int, size_t> min_inconsistent_at;
  std::map<InconsistencyKind, size_t> inconsistency_counts;
  size_t vulnerable_count = 0;
  size_t vulnerable_null_target_count = 0;
  size_t outlier_count = 0;
  std::map<OutlierFlag, size_t> outlier_counts;
  RunSettings settings;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Apps whose MinBelowMinLevel offending occurrence total is >= threshold.
size_t MinInconsistentCountAt(std::span<const ReportSummary> reports, int threshold);

// Order-insensitive reduction. Thresholds 1, 5, 10 and settings.threshold
// are always tabulated.
CorpusStats Aggregate(std::span<const ReportSummary> reports,
                      size_t multiple_apk_count, size_t failure_count,
                      const RunSettings& settings);

// "json" or "csv"; anything else throws kUnsupportedFormat. CSV columns are
// series,bucket,value with one row per histogram bucket or CDF step.
std::string EmitStats(const CorpusStats& stats, std::string_view format);

struct SkipRecord {
  std::string app_id;
  std::string reason;  // "multiple_apk" or "parse_failure"
  std::string stage;   // pipeline step that failed; empty for multiple_apk
  std::string error;   // error code name; empty for multiple_apk
  std::string message;

  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

std::string SkipToJson(const SkipRecord& skip);
SkipRecord SkipFromJson(std::string_view line);

struct CorpusOptions {
  AnalyzerConfig analyzer;
  size_t jobs = 1;
};

struct CorpusRun {
  size_t total = 0;
  size_t analyzed = 0;
  size_t multiple_apk = 0;
  size_t failures = 0;
  CorpusStats stats;
};

// Analyzes every <id>.apk / <id>.json in `input_dir` (with an optional
// <id>.page.html store snapshot) and writes results.jsonl, skips.jsonl,
// config.json, stats.json and stats.csv to `out_dir`. Per-app problems become
// skip records; only an unreadable input directory or unwritable output
// throws (kIo).
CorpusRun RunCorpus(const std::filesystem::path& input_dir,
                    const std::filesystem::path& out_dir, const ApiLevelDb& db,
                    const CorpusOptions& options);

// Recomputes statistics from a results.jsonl file plus the skips.jsonl and
// config.json written next to it. `threshold_override` replaces the recorded
// threshold. Throws kIo or kSchemaViolation.
CorpusStats StatsFromResults(const std::filesystem::path& results_path,
                             std::optional<int> threshold_override = std::nullopt);

}  // namespace sdklint

#endif  // SDKLINT_CORPUS_H_
