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

#include "sdklint/corpus.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "file_util.h"
#include "json.hpp"
#include "sdklint/apk.h"
#include "sdklint/app_profile.h"
#include "sdklint/dex.h"
#include "sdklint/error.h"
#include "sdklint/manifest.h"
#include "sdklint/store_page.h"
#include "text_util.h"

namespace sdklint {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kResultsFile = "results.jsonl";
constexpr std::string_view kSkipsFile = "skips.jsonl";
constexpr std::string_view kConfigFile = "config.json";
constexpr std::string_view kPageSuffix = ".page.html";
constexpr int kStandardThresholds[] = {1, 5, 10};

ordered_json HistogramJson(const Histogram& h, const char* key) {
  ordered_json buckets = ordered_json::array();
  for (const auto& [level, count] : h.buckets) {
    buckets.push_back(ordered_json{{key, level}, {"count", count}});
  }
  return ordered_json{{"buckets", std::move(buckets)}, {"absent", h.absent}};
}

ordered_json CdfJson(const Cdf& cdf, const char* key) {
  ordered_json steps = ordered_json::array();
  for (const auto& [value, fraction] : cdf) {
    steps.push_back(ordered_json{{key, value}, {"fraction", fraction}});
  }
  return steps;
}

double Fraction(size_t part, size_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

std::string FormatNumber(double v) { return json(v).dump(); }

[[noreturn]] void Schema(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

struct AppInputs {
  std::optional<fs::path> apk;
  std::optional<fs::path> descriptor;
  std::optional<fs::path> page;
};

struct Outcome {
  std::string app_id;
  std::string report_line;
  ReportSummary summary;
  std::optional<SkipRecord> skip;
};

std::map<std::string, AppInputs> Discover(const fs::path& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot read input directory " + dir.string() + ": " +
                                    ec.message());
  }
  std::map<std::string, AppInputs> apps;
  for (const fs::directory_entry& entry : it) {
    if (!entry.is_regular_file(ec)) continue;
    std::string name = entry.path().filename().string();
    if (internal::EndsWith(name, kPageSuffix)) {
      apps[name.substr(0, name.size() - kPageSuffix.size())].page = entry.path();
    } else if (internal::EndsWith(name, ".apk")) {
      apps[name.substr(0, name.size() - 4)].apk = entry.path();
    } else if (internal::EndsWith(name, ".json")) {
      apps[name.substr(0, name.size() - 5)].descriptor = entry.path();
    }
  }
  // A snapshot alone is not an app.
  std::erase_if(apps, [](const auto& kv) {
    return !kv.second.apk && !kv.second.descriptor;
  });
  return apps;
}

Outcome ProcessApp(const std::string& app_id, const AppInputs& in,
                   const ApiLevelDb& db, const AnalyzerConfig& config) {
  Outcome out;
  out.app_id = app_id;
  std::string stage = "input";
  try {
    if (in.apk && in.descriptor) {
      Schema("both " + app_id + ".apk and " + app_id + ".json are present");
    }
    if (in.page) {
      stage = "store_page";
      StoreMetadata meta = ParseStorePage(internal::ReadFile(*in.page), app_id);
      if (IsMultipleApk(meta)) {
        out.skip = SkipRecord{app_id, "multiple_apk", "", "",
                              "store page reports \"Varies with device\""};
        return out;
      }
    }
    AppProfile profile;
    if (in.apk) {
      stage = "read";
      std::string bytes = internal::ReadFile(*in.apk);
      stage = "apk";
      ApkContents apk = OpenApk(bytes);
      stage = "manifest";
      DeclaredSdkRaw declared = ParseManifestBytes(apk.manifest);
      stage = "dex";
      std::vector<MethodRef> refs = ExtractMethodRefs(apk.dex_files);
      profile = MakeProfile(app_id, declared, std::move(refs), config.prefixes);
    } else {
      stage = "read";
      std::string text = internal::ReadFile(*in.descriptor);
      stage = "descriptor";
      profile = LoadAppDescriptor(text, config.prefixes);
      profile.app_id = app_id;
    }
    stage = "analyze";
    AnalysisReport report = AnalyzeApp(profile, db, config);
    out.report_line = ReportToJson(report, /*include_breakdown=*/false);
    out.summary = Summarize(report);
  } catch (const Error& e) {
    out.skip = SkipRecord{app_id, "parse_failure", stage,
                          std::string(ErrorCodeName(e.code())), e.what()};
  } catch (const std::exception& e) {
    out.skip = SkipRecord{app_id, "parse_failure", stage, "Internal", e.what()};
  }
  return out;
}

// Rewrites a JSON-lines file sorted by each object's app_id.
void SortJsonLines(const fs::path& path) {
  std::string text = internal::ReadFile(path);
  std::vector<std::pair<std::string, std::string>> keyed;
  for (std::string_view line : internal::SplitLines(text)) {
    if (internal::Trim(line).empty()) continue;
    json j = json::parse(line);
    keyed.emplace_back(j.at("app_id").get<std::string>(), std::string(line));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string sorted;
  for (const auto& [id, line] : keyed) sorted += line + "\n";
  internal::WriteFile(path, sorted);
}

std::vector<std::string> ReadJsonLines(const fs::path& path) {
  std::vector<std::string> lines;
  const std::string text = internal::ReadFile(path);
  for (std::string_view line : internal::SplitLines(text)) {
    if (!internal::Trim(line).empty()) lines.emplace_back(line);
  }
  return lines;
}

}  // namespace

size_t Histogram::Total() const {
  size_t total = absent;
  for (const auto& [level, count] : buckets) total += count;
  return total;
}

Cdf MakeCdf(std::vector<int> values) {
  Cdf cdf;
  std::sort(values.begin(), values.end());
  for (size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    cdf.emplace_back(values[i], Fraction(i + 1, values.size()));
  }
  return cdf;
}

RunSettings MakeRunSettings(const ApiLevelDb& db, const AnalyzerConfig& config) {
  return RunSettings{db.source_digest(), EffectiveLatest(db, config), config.threshold,
                     config.prefixes, config.rules};
}

std::string RunSettingsToJson(const RunSettings& s) {
  ordered_json j;
  j["db_digest"] = s.db_digest;
  j["latest"] = s.latest;
  j["threshold"] = s.threshold;
  j["prefixes"] = s.prefixes;
  ordered_json rules = ordered_json::array();
  for (const VulnRule& r : s.rules) {
    rules.push_back(ordered_json{{"api", r.api.ToString()},
                                 {"fixed_at_target", r.fixed_at_target},
                                 {"description", r.description}});
  }
  j["rules"] = std::move(rules);
  return j.dump(2) + "\n";
}

RunSettings RunSettingsFromJson(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) Schema("config: not a JSON object");
  RunSettings s;
  try {
    s.db_digest = j.at("db_digest").get<std::string>();
    s.latest = j.at("latest").get<int>();
    s.threshold = j.at("threshold").get<int>();
    s.prefixes = j.at("prefixes").get<std::vector<std::string>>();
    for (const json& r : j.at("rules")) {
      auto api = ApiSignature::Parse(r.at("api").get<std::string>());
      if (!api) Schema("config: bad rule signature");
      s.rules.push_back(VulnRule{*api, r.at("fixed_at_target").get<int>(),
                                 r.at("description").get<std::string>()});
    }
  } catch (const json::exception& e) {
    Schema(std::string("config: ") + e.what());
  }
  return s;
}

size_t MinInconsistentCountAt(std::span<const ReportSummary> reports, int threshold) {
  return std::count_if(reports.begin(), reports.end(), [&](const ReportSummary& r) {
    auto it = r.inconsistencies.find(InconsistencyKind::kMinBelowMinLevel);
    return it != r.inconsistencies.end() && it->second >= static_cast<size_t>(threshold);
  });
}

CorpusStats Aggregate(std::span<const ReportSummary> reports, size_t multiple_apk_count,
                      size_t failure_count, const RunSettings& settings) {
  CorpusStats s;
  s.analyzed_count = reports.size();
  s.multiple_apk_count = multiple_apk_count;
  s.failure_count = failure_count;
  s.total = s.analyzed_count + multiple_apk_count + failure_count;
  s.settings = settings;

  std::vector<int> lags;
  std::vector<int> calls;
  for (const ReportSummary& r : reports) {
    const DeclaredSdk& d = r.declared;
    if (d.min_defined) {
      ++s.min_distribution.buckets[d.min];
    } else {
      ++s.nondefined_min;
      ++s.min_distribution.absent;
    }
    if (d.target_defined) {
      ++s.target_distribution.buckets[d.target];
    } else {
      ++s.nondefined_target;
      ++s.target_distribution.absent;
    }
    if (!d.max_defined) ++s.nondefined_max;

    if (r.outlier_flags.empty()) {
      lags.push_back(r.lag);
    } else {
      ++s.lag_excluded;
      ++s.outlier_count;
      for (OutlierFlag f : r.outlier_flags) ++s.outlier_counts[f];
    }
    calls.push_back(static_cast<int>(r.api_call_count));
    ++s.min_level_with_lib.buckets[r.min_level_with_lib];
    ++s.min_level_without_lib.buckets[r.min_level];
    for (const auto& [kind, n] : r.inconsistencies) ++s.inconsistency_counts[kind];
    if (r.vulnerability_count > 0) {
      ++s.vulnerable_count;
      if (r.vulnerable_null_target) ++s.vulnerable_null_target_count;
    }
  }
  s.lag_cdf = MakeCdf(std::move(lags));
  s.api_call_count_cdf = MakeCdf(std::move(calls));
  for (int t : kStandardThresholds) s.min_inconsistent_at[t] = MinInconsistentCountAt(reports, t);
  s.min_inconsistent_at[settings.threshold] =
      MinInconsistentCountAt(reports, settings.threshold);
  return s;
}

std::string EmitStats(const CorpusStats& s, std::string_view format) {
  if (format == "json") {
    ordered_json j;
    j["total"] = s.total;
    j["analyzed_count"] = s.analyzed_count;
    j["multiple_apk_count"] = s.multiple_apk_count;
    j["failure_count"] = s.failure_count;
    ordered_json& nd = j["nondefined_counts"];
    for (auto [key, count] : {std::pair{"min", s.nondefined_min},
                              std::pair{"target", s.nondefined_target},
                              std::pair{"max", s.nondefined_max}}) {
      nd[key] = ordered_json{{"count", count},
                             {"fraction", Fraction(count, s.analyzed_count)}};
    }
    j["min_distribution"] = HistogramJson(s.min_distribution, "level");
    j["target_distribution"] = HistogramJson(s.target_distribution, "level");
    j["lag_cdf"] = CdfJson(s.lag_cdf, "lag");
    j["lag_outliers_excluded"] = s.lag_excluded;
    j["api_call_count_cdf"] = CdfJson(s.api_call_count_cdf, "count");
    j["min_level_distribution_with_lib"] = HistogramJson(s.min_level_with_lib, "level");
    j["min_level_distribution_without_lib"] =
        HistogramJson(s.min_level_without_lib, "level");
    ordered_json at = ordered_json::array();
    for (const auto& [t, n] : s.min_inconsistent_at) {
      at.push_back(ordered_json{{"threshold", t}, {"count", n}});
    }
    j["min_inconsistent_count_at"] = std::move(at);
    ordered_json& kinds = j["inconsistency_counts"];
    for (auto kind : {InconsistencyKind::kMinBelowMinLevel,
                      InconsistencyKind::kTargetBelowMaxLevel,
                      InconsistencyKind::kMaxAboveMaxLevel,
                      InconsistencyKind::kInfeasibleApiSet}) {
      auto it = s.inconsistency_counts.find(kind);
      kinds[std::string(InconsistencyKindName(kind))] =
          it == s.inconsistency_counts.end() ? 0 : it->second;
    }
    j["vulnerable_count"] = s.vulnerable_count;
    j["vulnerable_null_target_count"] = s.vulnerable_null_target_count;
    j["outlier_count"] = s.outlier_count;
    ordered_json& flags = j["outlier_counts"];
    for (auto flag : {OutlierFlag::kTargetZero, OutlierFlag::kTargetAboveLatest,
                      OutlierFlag::kNegativeLag}) {
      auto it = s.outlier_counts.find(flag);
      flags[std::string(OutlierFlagName(flag))] =
          it == s.outlier_counts.end() ? 0 : it->second;
    }
    j["config"] = json::parse(RunSettingsToJson(s.settings));
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string out = "series,bucket,value\n";
    auto histogram = [&out](std::string_view series, const Histogram& h) {
      for (const auto& [level, count] : h.buckets) {
        out += std::string(series) + "," + std::to_string(level) + "," +
               std::to_string(count) + "\n";
      }
      if (h.absent > 0) {
        out += std::string(series) + ",absent," + std::to_string(h.absent) + "\n";
      }
    };
    auto cdf = [&out](std::string_view series, const Cdf& c) {
      for (const auto& [value, fraction] : c) {
        out += std::string(series) + "," + std::to_string(value) + "," +
               FormatNumber(fraction) + "\n";
      }
    };
    histogram("min_distribution", s.min_distribution);
    histogram("target_distribution", s.target_distribution);
    cdf("lag_cdf", s.lag_cdf);
    cdf("api_call_count_cdf", s.api_call_count_cdf);
    histogram("min_level_with_lib", s.min_level_with_lib);
    histogram("min_level_without_lib", s.min_level_without_lib);
    return out;
  }
  throw Error(ErrorCode::kUnsupportedFormat,
              "unsupported format '" + std::string(format) + "' (json or csv)");
}

std::string SkipToJson(const SkipRecord& skip) {
  ordered_json j;
  j["app_id"] = skip.app_id;
  j["reason"] = skip.reason;
  j["stage"] = skip.stage;
  j["error"] = skip.error;
  j["message"] = skip.message;
  return j.dump();
}

SkipRecord SkipFromJson(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) Schema("skips: not a JSON object");
  try {
    return SkipRecord{j.at("app_id").get<std::string>(), j.at("reason").get<std::string>(),
                      j.at("stage").get<std::string>(), j.at("error").get<std::string>(),
                      j.at("message").get<std::string>()};
  } catch (const json::exception& e) {
    Schema(std::string("skips: ") + e.what());
  }
}

CorpusRun RunCorpus(const fs::path& input_dir, const fs::path& out_dir,
                    const ApiLevelDb& db, const CorpusOptions& options) {
  std::map<std::string, AppInputs> apps = Discover(input_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  }

  const fs::path results_path = out_dir / kResultsFile;
  internal::WriteFile(results_path, "");
  std::ofstream results(results_path, std::ios::binary | std::ios::app);
  if (!results) throw Error(ErrorCode::kIo, "cannot write " + results_path.string());

  std::vector<std::pair<std::string, AppInputs>> work(apps.begin(), apps.end());
  std::vector<ReportSummary> summaries;
  std::vector<SkipRecord> skips;

  // The calling thread is the only writer; workers hand back finished apps.
  auto consume = [&](Outcome&& o) {
    if (o.skip) {
      skips.push_back(std::move(*o.skip));
      return;
    }
    results << o.report_line << '\n';
    summaries.push_back(std::move(o.summary));
  };

  const size_t jobs = std::max<size_t>(1, std::min(options.jobs, work.size()));
  if (jobs <= 1) {
    for (const auto& [id, in] : work) consume(ProcessApp(id, in, db, options.analyzer));
  } else {
    std::atomic<size_t> next{0};
    std::mutex mu;
    std::condition_variable ready;
    std::deque<Outcome> done;
    std::vector<std::thread> pool;
    for (size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < work.size(); i = next++) {
          Outcome o = ProcessApp(work[i].first, work[i].second, db, options.analyzer);
          std::lock_guard lock(mu);
          done.push_back(std::move(o));
          ready.notify_one();
        }
      });
    }
    for (size_t received = 0; received < work.size(); ++received) {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return !done.empty(); });
      Outcome o = std::move(done.front());
      done.pop_front();
      lock.unlock();
      consume(std::move(o));
    }
    for (std::thread& t : pool) t.join();
  }
  results.close();
  if (!results) throw Error(ErrorCode::kIo, "error writing " + results_path.string());
  SortJsonLines(results_path);

  std::sort(skips.begin(), skips.end(),
            [](const SkipRecord& a, const SkipRecord& b) { return a.app_id < b.app_id; });
  std::string skip_text;
  size_t multiple = 0;
  for (const SkipRecord& s : skips) {
    skip_text += SkipToJson(s) + "\n";
    if (s.reason == "multiple_apk") ++multiple;
  }
  internal::WriteFile(out_dir / kSkipsFile, skip_text);

  RunSettings settings = MakeRunSettings(db, options.analyzer);
  internal::WriteFile(out_dir / kConfigFile, RunSettingsToJson(settings));

  CorpusRun run;
  run.analyzed = summaries.size();
  run.multiple_apk = multiple;
  run.failures = skips.size() - multiple;
  run.total = run.analyzed + run.multiple_apk + run.failures;
  run.stats = Aggregate(summaries, run.multiple_apk, run.failures, settings);
  internal::WriteFile(out_dir / "stats.json", EmitStats(run.stats, "json"));
  internal::WriteFile(out_dir / "stats.csv", EmitStats(run.stats, "csv"));
  return run;
}

CorpusStats StatsFromResults(const fs::path& results_path,
                             std::optional<int> threshold_override) {
  const fs::path dir = results_path.parent_path();
  std::vector<ReportSummary> summaries;
  for (const std::string& line : ReadJsonLines(results_path)) {
    summaries.push_back(SummaryFromJson(line));
  }
  size_t multiple = 0;
  size_t failures = 0;
  if (fs::exists(dir / kSkipsFile)) {
    for (const std::string& line : ReadJsonLines(dir / kSkipsFile)) {
      (SkipFromJson(line).reason == "multiple_apk" ? multiple : failures) += 1;
    }
  }
  RunSettings settings;
  if (fs::exists(dir / kConfigFile)) {
    settings = RunSettingsFromJson(internal::ReadFile(dir / kConfigFile));
  }
  if (threshold_override) settings.threshold = *threshold_override;
  return Aggregate(summaries, multiple, failures, settings);
}

}  // namespace sdklint
