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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "file_util.h"
#include "json.hpp"
#include "sdklint/analyzer.h"
#include "sdklint/api_db.h"
#include "sdklint/app_profile.h"
#include "sdklint/corpus.h"
#include "sdklint/error.h"
#include "sdklint/report.h"

namespace sdklint {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raw flag values. The option pointers tell given flags apart from defaults
// so that a config file can fill in whatever the command line left out.
struct Flags {
  std::string config;
  std::string db;
  int threshold = 5;
  std::vector<std::string> prefixes;
  std::string rules;
  int latest = 0;
  std::string format = "json";
  bool strict = false;
  size_t jobs = 1;
  std::string events;
  std::string out;
  std::string input;

  // Options of the subcommand that was parsed.
  CLI::Option* db_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* prefix_opt = nullptr;
  CLI::Option* rules_opt = nullptr;
  CLI::Option* latest_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* strict_opt = nullptr;
};

struct Settings {
  std::optional<std::string> db;
  AnalyzerConfig analyzer;
  std::string format = "json";
  bool strict = false;
  size_t jobs = 1;
};

[[noreturn]] void Usage(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

bool Given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

// Flags win over the config file; the config file wins over defaults.
Settings Resolve(const Flags& f) {
  json config = json::object();
  fs::path base;
  if (!f.config.empty()) {
    std::string text = internal::ReadFile(f.config);
    config = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (config.is_discarded() || !config.is_object()) {
      Usage("config " + f.config + " is not a JSON object");
    }
    base = fs::path(f.config).parent_path();
  }
  auto from_config = [&]<typename T>(const char* key, std::optional<T>& slot) {
    auto it = config.find(key);
    if (it == config.end() || it->is_null()) return;
    try {
      slot = it->get<T>();
    } catch (const json::exception&) {
      Usage(std::string("config key '") + key + "' has the wrong type");
    }
  };
  auto config_path = [&](const std::string& p) { return (base / p).string(); };

  Settings s;
  std::optional<std::string> db, rules, format;
  std::optional<int> threshold, latest;
  std::optional<std::vector<std::string>> prefixes;
  std::optional<bool> strict;
  std::optional<size_t> jobs;
  from_config("db", db);
  from_config("rules", rules);
  from_config("format", format);
  from_config("threshold", threshold);
  from_config("latest", latest);
  from_config("lib_prefixes", prefixes);
  from_config("strict", strict);
  from_config("jobs", jobs);
  if (db) db = config_path(*db);
  if (rules) rules = config_path(*rules);

  if (Given(f.db_opt)) db = f.db;
  if (Given(f.rules_opt)) rules = f.rules;
  if (Given(f.format_opt)) format = f.format;
  if (Given(f.threshold_opt)) threshold = f.threshold;
  if (Given(f.latest_opt)) latest = f.latest;
  if (Given(f.prefix_opt)) prefixes = f.prefixes;
  if (Given(f.strict_opt)) strict = f.strict;
  if (Given(f.jobs_opt)) jobs = f.jobs;

  s.db = db;
  if (threshold) {
    if (*threshold < 1) Usage("threshold must be >= 1");
    s.analyzer.threshold = *threshold;
  }
  if (latest) {
    if (*latest < ApiLevel::kMin || *latest > ApiLevel::kMax) {
      Usage("latest must be an API level between 1 and 10000");
    }
    s.analyzer.latest_override = *latest;
  }
  if (prefixes) s.analyzer.prefixes = *prefixes;
  if (rules) s.analyzer.rules = ParseVulnRules(internal::ReadFile(*rules));
  if (format) {
    if (*format != "json" && *format != "csv") {
      throw Error(ErrorCode::kUnsupportedFormat,
                  "unsupported format '" + *format + "' (json or csv)");
    }
    s.format = *format;
  }
  s.strict = strict.value_or(false);
  s.jobs = std::max<size_t>(1, jobs.value_or(1));
  return s;
}

ApiLevelDb LoadDb(const Settings& s) {
  if (!s.db) Usage("--db is required");
  return LoadSnapshot(internal::ReadFile(*s.db));
}

// Registers the shared analysis flags on `cmd` and returns a Flags whose
// option pointers refer to them; values land in `f`.
Flags AddAnalysisFlags(CLI::App* cmd, Flags& f) {
  Flags opts;
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  opts.db_opt = cmd->add_option("--db", f.db, "API database snapshot");
  opts.threshold_opt =
      cmd->add_option("--threshold", f.threshold, "Offending-call count gate (>= 1)");
  opts.prefix_opt = cmd->add_option(
      "--lib-prefix", f.prefixes, "Library call-site prefix; repeat to replace the defaults");
  opts.rules_opt = cmd->add_option("--rules", f.rules, "Vulnerability rule CSV");
  opts.latest_opt = cmd->add_option("--latest", f.latest, "Override the latest API level");
  return opts;
}

void UseOptions(Flags& f, const Flags& opts) {
  f.db_opt = opts.db_opt;
  f.threshold_opt = opts.threshold_opt;
  f.prefix_opt = opts.prefix_opt;
  f.rules_opt = opts.rules_opt;
  f.latest_opt = opts.latest_opt;
  f.format_opt = opts.format_opt;
  f.jobs_opt = opts.jobs_opt;
  f.strict_opt = opts.strict_opt;
}

std::string SummaryLine(const CorpusRun& run) {
  std::string line = "analyzed=" + std::to_string(run.analyzed) +
                     " skipped=" + std::to_string(run.multiple_apk) +
                     " failures=" + std::to_string(run.failures);
  for (auto kind : {InconsistencyKind::kMinBelowMinLevel,
                    InconsistencyKind::kTargetBelowMaxLevel,
                    InconsistencyKind::kMaxAboveMaxLevel,
                    InconsistencyKind::kInfeasibleApiSet}) {
    auto it = run.stats.inconsistency_counts.find(kind);
    line += " " + std::string(InconsistencyKindName(kind)) + "=" +
            std::to_string(it == run.stats.inconsistency_counts.end() ? 0 : it->second);
  }
  line += " vulnerable=" + std::to_string(run.stats.vulnerable_count);
  return line;
}

int BuildDb(const Flags& f, std::ostream& out, std::ostream& err) {
  ApiLevelDb db = ParseApiVersions(internal::ReadFile(f.input));
  if (!f.events.empty()) {
    ChangeResult result = ApplyChangeEvents(db, internal::ReadFile(f.events));
    for (const ChangeWarning& w : result.warnings) {
      err << f.events << ":" << w.line << ": warning: " << w.message << "\n";
    }
    db = std::move(result.db);
  }
  internal::WriteFile(f.out, SaveSnapshot(db));
  out << DbStatsToJson(ComputeDbStats(db)) << "\n";
  return kExitClean;
}

int InspectApp(const Flags& f, std::ostream& out) {
  Settings s = Resolve(f);
  ApiLevelDb db = LoadDb(s);
  fs::path path(f.input);
  std::string bytes = internal::ReadFile(path);
  AppProfile profile = path.extension() == ".json"
                           ? LoadAppDescriptor(bytes, s.analyzer.prefixes)
                           : IngestApk(bytes, path.stem().string(), s.analyzer.prefixes);
  AnalysisReport report = AnalyzeApp(profile, db, s.analyzer);
  out << ReportToJson(report, /*include_breakdown=*/true) << "\n";
  return report.HasFindings() ? kExitFindings : kExitClean;
}

int Scan(const Flags& f, std::ostream& out, std::ostream& err) {
  Settings s = Resolve(f);
  ApiLevelDb db = LoadDb(s);
  if (f.out.empty()) Usage("--out is required");
  CorpusOptions options{s.analyzer, s.jobs};
  CorpusRun run = RunCorpus(f.input, f.out, db, options);
  out << EmitStats(run.stats, s.format);
  err << SummaryLine(run) << "\n";
  return s.strict && run.failures > 0 ? kExitError : kExitClean;
}

int Stats(const Flags& f, std::ostream& out) {
  Settings s = Resolve(f);
  std::optional<int> threshold;
  if (Given(f.threshold_opt)) threshold = s.analyzer.threshold;
  out << EmitStats(StatsFromResults(f.input, threshold), s.format);
  return kExitClean;
}

int RulesList(const Flags& f, std::ostream& out) {
  Settings s = Resolve(f);
  if (s.format == "csv") {
    out << "signature,fixed_at_target,description\n";
    for (const VulnRule& r : s.analyzer.rules) {
      out << r.api.ToString() << "," << r.fixed_at_target << ",\"" << r.description << "\"\n";
    }
    return kExitClean;
  }
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const VulnRule& r : s.analyzer.rules) {
    rules.push_back({{"api", r.api.ToString()},
                     {"fixed_at_target", r.fixed_at_target},
                     {"description", r.description}});
  }
  out << rules.dump(2) << "\n";
  return kExitClean;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks declared SDK versions against the API levels an app uses",
               "sdklint"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* build = app.add_subcommand("build-db", "Build an API database snapshot");
  build->add_option("api_versions", f.input, "api-versions XML")->required();
  build->add_option("--events", f.events, "Change-event CSV (signature,event,level)");
  build->add_option("--out", f.out, "Snapshot to write")->required();

  CLI::App* inspect = app.add_subcommand("inspect-app", "Analyze one APK or descriptor");
  inspect->add_option("app", f.input, "APK or .json descriptor")->required();
  Flags inspect_opts = AddAnalysisFlags(inspect, f);

  CLI::App* scan = app.add_subcommand("scan", "Analyze a corpus directory");
  scan->add_option("dir", f.input, "Directory of APKs / descriptors")->required();
  scan->add_option("--out", f.out, "Output directory");
  Flags scan_opts = AddAnalysisFlags(scan, f);
  scan_opts.format_opt = scan->add_option("--format", f.format, "Stats output: json or csv");
  scan_opts.strict_opt = scan->add_flag("--strict", f.strict, "Exit 2 if any app fails");
  scan_opts.jobs_opt = scan->add_option("--jobs", f.jobs, "Worker threads");

  CLI::App* stats = app.add_subcommand("stats", "Recompute statistics from results.jsonl");
  stats->add_option("results", f.input, "results.jsonl from a scan")->required();
  stats->add_option("--config", f.config, "JSON config file; flags override it");
  Flags stats_opts;
  stats_opts.format_opt = stats->add_option("--format", f.format, "json or csv");
  stats_opts.threshold_opt = stats->add_option("--threshold", f.threshold, "Gate threshold");

  CLI::App* rules = app.add_subcommand("rules", "Vulnerability rules");
  rules->require_subcommand(1);
  CLI::App* list = rules->add_subcommand("list", "Print the active rules");
  list->add_option("--config", f.config, "JSON config file; flags override it");
  Flags list_opts;
  list_opts.rules_opt = list->add_option("--rules", f.rules, "Vulnerability rule CSV");
  list_opts.format_opt = list->add_option("--format", f.format, "json or csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitError;
  }

  try {
    if (build->parsed()) return BuildDb(f, out, err);
    if (inspect->parsed()) {
      UseOptions(f, inspect_opts);
      return InspectApp(f, out);
    }
    if (scan->parsed()) {
      UseOptions(f, scan_opts);
      return Scan(f, out, err);
    }
    if (stats->parsed()) {
      UseOptions(f, stats_opts);
      return Stats(f, out);
    }
    if (list->parsed()) {
      UseOptions(f, list_opts);
      return RulesList(f, out);
    }
    err << "sdklint: no command\n";
    return kExitError;
  } catch (const Error& e) {
    err << "sdklint: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "sdklint: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace sdklint
