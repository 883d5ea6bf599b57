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

// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "generators.h"
#include "json.hpp"
#include "sdklint/analyzer.h"
#include "sdklint/api_db.h"
#include "sdklint/app_profile.h"
#include "sdklint/corpus.h"
#include "sdklint/dex.h"
#include "sdklint/apk.h"
#include "sdklint/manifest.h"
#include "sdklint/report.h"
#include "test_util.h"

namespace sdklint {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using testing::ReadBytes;
using testing::ReadFixture;
using testing::WriteBytes;

// Pinned limits.
constexpr double kSideEffectBudgetSeconds = 1.0;
constexpr double kOracleBudgetSeconds = 10.0;
constexpr int kOracleTrials = 1000;
constexpr double kCorpusBudgetSeconds = 60.0;
constexpr int kLargeCorpusApps = 1000;
constexpr int kLargeCorpusRefs = 10000;
constexpr int kLagTriples = 50;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed expectations; the first few are kept for the report line.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome Done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failed check(s): " + notes_};
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fixed(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << v;
  return s.str();
}

const ApiLevelDb& FixtureDb() {
  static const ApiLevelDb db = ParseApiVersions(ReadFixture("api/api-versions.xml"));
  return db;
}

std::vector<InconsistencyKind> KindsOf(const AnalysisReport& r) {
  std::vector<InconsistencyKind> kinds;
  for (const auto& i : r.inconsistencies) kinds.push_back(i.kind);
  return kinds;
}

size_t CountKind(const AnalysisReport& r, InconsistencyKind kind) {
  auto kinds = KindsOf(r);
  return std::count(kinds.begin(), kinds.end(), kind);
}

AnalysisReport AnalyzeDescriptor(const std::string& name, const ApiLevelDb& db) {
  AnalyzerConfig config;
  return AnalyzeApp(
      LoadAppDescriptor(ReadFixture("descriptors/" + name + ".json"), config.prefixes), db,
      config);
}

std::string ReadOutputs(const fs::path& out) {
  std::string all;
  for (const char* f : {"results.jsonl", "skips.jsonl", "config.json", "stats.json", "stats.csv"}) {
    all += std::string(f) + "\n" + ReadBytes(out / f);
  }
  return all;
}

size_t LineCount(const fs::path& path) {
  std::string text = ReadBytes(path);
  return std::count(text.begin(), text.end(), '\n');
}

// 1. Default resolution over every presence combination.
Outcome DefaultsSemantics() {
  Checker c;
  const std::optional<int> absent;
  int triples = 0;
  for (std::optional<int> min : {absent, std::optional(1), std::optional(8), std::optional(19),
                                 std::optional(23)}) {
    for (std::optional<int> target : {absent, std::optional(16)}) {
      for (std::optional<int> max : {absent, std::optional(22)}) {
        ++triples;
        DeclaredSdk d = ResolveDeclared({min, target, max, 0});
        int want_min = min.value_or(1);
        int want_target = target.value_or(want_min);
        c.Expect(d.min == want_min && d.target == want_target && d.max == max,
                 "triple #" + std::to_string(triples));
      }
    }
  }
  DeclaredSdk none = ResolveDeclared({});
  c.Expect(none.min == 1 && none.target == 1, "all-absent must resolve to (1, 1)");
  DeclaredSdk min8 = ResolveDeclared({8, absent, absent, 0});
  c.Expect(min8.target == 8, "absent target must equal min");
  return c.Done(std::to_string(triples) + " raw triples resolved exactly");
}

// 2. Declared min below the level of an API in use.
Outcome SideEffectOne() {
  Checker c;
  auto start = Clock::now();
  ApiLevelDb db = ParseApiVersions(ReadFixture("api/api-versions.xml"));
  AnalysisReport low = AnalyzeDescriptor("vpn_min19", db);
  AnalysisReport ok = AnalyzeDescriptor("vpn_min21", db);
  double elapsed = Seconds(start);
  c.Expect(CountKind(low, InconsistencyKind::kMinBelowMinLevel) == 1,
           "min=19 must yield exactly one MinBelowMinLevel");
  if (!low.inconsistencies.empty()) {
    const auto& apis = low.inconsistencies.front().offending_apis;
    c.Expect(apis.size() == 1 && apis[0].api.member == "addDisallowedApplication" &&
                 apis[0].level == 21,
             "the finding must name addDisallowedApplication at 21");
  }
  c.Expect(CountKind(ok, InconsistencyKind::kMinBelowMinLevel) == 0,
           "min=21 must yield no MinBelowMinLevel");
  c.Expect(elapsed < kSideEffectBudgetSeconds, "took " + Fixed(elapsed) + " s");
  return c.Done("min=19 -> 1 finding naming addDisallowedApplication, min=21 -> 0; " +
                Fixed(elapsed) + " s < " + Fixed(kSideEffectBudgetSeconds) + " s");
}

// 3. addJavascriptInterface under old targets.
Outcome SideEffectTwo() {
  Checker c;
  AnalysisReport t16 = AnalyzeDescriptor("webview_target16", FixtureDb());
  AnalysisReport null_target = AnalyzeDescriptor("webview_null_target", FixtureDb());
  AnalysisReport t17 = AnalyzeDescriptor("webview_target17", FixtureDb());
  c.Expect(t16.vulnerabilities.size() == 1, "target=16 must yield exactly 1 finding");
  c.Expect(t16.vulnerabilities.size() != 1 || !t16.vulnerabilities[0].target_was_null,
           "target=16 is declared");
  c.Expect(null_target.vulnerabilities.size() == 1,
           "absent target with min=8 must yield exactly 1 finding");
  c.Expect(null_target.vulnerabilities.size() != 1 ||
               (null_target.vulnerabilities[0].target_was_null &&
                null_target.vulnerabilities[0].effective_target == 8),
           "absent target must be flagged target_was_null with effective target 8");
  c.Expect(t17.vulnerabilities.empty(), "target=17 must be clean");
  return c.Done("target 16 -> 1, absent(min 8) -> 1 with target_was_null, target 17 -> 0");
}

// 4. Envelope against brute-force availability.
Outcome EnvelopeOracle() {
  Checker c;
  std::mt19937 rng(20160419);
  auto start = Clock::now();
  int mismatches = 0;
  for (int trial = 0; trial < kOracleTrials; ++trial) {
    ApiLevelDb db = testing::RandomDb(rng, 50, 25);
    auto refs = testing::RandomRefs(rng, db, 30);
    LevelEnvelope env = ComputeEnvelope(refs, db);
    int scan_to = db.latest_level().value();
    auto expected = testing::BruteForceLevels(refs, db, scan_to);
    bool same = testing::EnvelopeLevels(env, scan_to) == expected;
    auto found = CheckConsistency(ResolveDeclared({}), env, scan_to, 1);
    bool infeasible = std::any_of(found.begin(), found.end(), [](const Inconsistency& i) {
      return i.kind == InconsistencyKind::kInfeasibleApiSet;
    });
    if (!same || infeasible != expected.empty()) ++mismatches;
  }
  double elapsed = Seconds(start);
  c.Expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  c.Expect(elapsed < kOracleBudgetSeconds, "took " + Fixed(elapsed) + " s");
  return c.Done(std::to_string(kOracleTrials) + " trials, 0 mismatches, " + Fixed(elapsed) +
                " s < " + Fixed(kOracleBudgetSeconds) + " s");
}

// 5. Native parsers against independent renderings of the same bytes.
Outcome ParserCrossOracle() {
  Checker c;
  int compared = 0;
  for (const char* name : {"webview_call", "no_code", "support_fragment", "mixed", "classes2"}) {
    auto native = ExtractMethodRefs(ReadFixture(std::string("dex/") + name + ".dex"));
    auto text = ParseDexdumpText(ReadFixture(std::string("dex/") + name + ".dexdump.txt"));
    std::sort(native.begin(), native.end());
    std::sort(text.begin(), text.end());
    c.Expect(native == text, std::string("dex ") + name);
    ++compared;
  }
  for (const char* name : {"min9_target16", "duplicate_min", "no_uses_sdk", "min19_target23"}) {
    DeclaredSdkRaw plain = ParseManifestXml(ReadFixture(std::string("manifest/") + name + ".xml"));
    for (const char* ext : {".axml", ".utf8.axml"}) {
      std::string bytes = ReadFixture(std::string("manifest/") + name + ext);
      c.Expect(ParseManifestXml(DecodeBinaryAxml(bytes)) == plain,
               std::string("manifest ") + name + ext);
      ++compared;
    }
  }
  ApkContents apk = OpenApk(ReadFixture("apk/multidex.apk"));
  auto from_apk = ExtractMethodRefs(apk.dex_files);
  auto from_text = ParseDexdumpText(ReadFixture("dex/mixed.dexdump.txt") +
                                    ReadFixture("dex/classes2.dexdump.txt"));
  std::sort(from_apk.begin(), from_apk.end());
  std::sort(from_text.begin(), from_text.end());
  c.Expect(from_apk == from_text, "multidex apk");
  ++compared;
  return c.Done(std::to_string(compared) + " fixture pairs equal, 0 mismatches");
}

// 6. Database statistics against independently scripted counts.
Outcome DbStatistics() {
  Checker c;
  auto expected = nlohmann::json::parse(ReadFixture("api/expected_counts.json"));
  ApiLevelDb db = ParseApiVersions(ReadFixture("api/api-versions.xml"));
  DbStats stats = ComputeDbStats(db);
  c.Expect(stats.total == expected["total"].get<size_t>(), "total");
  c.Expect(stats.deprecated_count == expected["deprecated"].get<size_t>(), "deprecated");
  c.Expect(stats.removed_count == expected["removed"].get<size_t>(), "removed");
  size_t histogram_sum = 0;
  for (const auto& [level, count] : stats.added_per_level) {
    histogram_sum += count;
    auto it = expected["added_per_level"].find(std::to_string(level));
    c.Expect(it != expected["added_per_level"].end() && it->get<size_t>() == count,
             "added at level " + std::to_string(level));
  }
  c.Expect(histogram_sum == stats.total, "histogram must sum to total");
  ChangeResult events = ApplyChangeEvents(db, ReadFixture("api/events.csv"));
  c.Expect(events.applied == expected["events_applied"].get<size_t>(), "events applied");
  c.Expect(events.warnings.size() == expected["events_warnings"].get<size_t>(), "event warnings");

  std::string summary = "fixture totals " + std::to_string(stats.total) + "/" +
                        std::to_string(stats.deprecated_count) + "/" +
                        std::to_string(stats.removed_count) + " match the scripted counts";
  // The full 1.0-6.0 document set is user supplied: a directory holding
  // api-versions.xml and, optionally, events.csv.
  const char* full = std::getenv("SDKLINT_FULL_API_DIR");
  if (full == nullptr) {
    return c.Done(summary + "; full 1.0-6.0 set not supplied, 30083/794/190 check not run");
  }
  fs::path dir(full);
  ApiLevelDb full_db = ParseApiVersions(ReadBytes(dir / "api-versions.xml"));
  if (fs::exists(dir / "events.csv")) {
    full_db = ApplyChangeEvents(full_db, ReadBytes(dir / "events.csv")).db;
  }
  DbStats f = ComputeDbStats(full_db);
  c.Expect(f.total == 30083 && f.deprecated_count == 794 && f.removed_count == 190,
           "full set reports " + std::to_string(f.total) + "/" +
               std::to_string(f.deprecated_count) + "/" + std::to_string(f.removed_count));
  return c.Done(summary + "; full set reports 30083/794/190");
}

// 7. Store-snapshot filter.
Outcome MultipleApkFilter() {
  Checker c;
  fs::path in = testing::ScratchDir("ac7-in");
  fs::path out = testing::ScratchDir("ac7-out");
  WriteBytes(in / "varies.json", ReadFixture("descriptors/clean.json"));
  WriteBytes(in / "varies.page.html", ReadFixture("pages/varies.page.html"));
  WriteBytes(in / "plain.json", ReadFixture("descriptors/clean.json"));
  WriteBytes(in / "plain.page.html", ReadFixture("pages/plain.page.html"));
  WriteBytes(in / "nopage.json", ReadFixture("descriptors/clean.json"));
  CorpusRun run = RunCorpus(in, out, FixtureDb(), {});
  std::string results = ReadBytes(out / "results.jsonl");
  std::string skips = ReadBytes(out / "skips.jsonl");
  c.Expect(run.multiple_apk == 1 && run.analyzed == 2 && run.failures == 0, "counts");
  c.Expect(skips.find("\"app_id\":\"varies\"") != std::string::npos &&
               skips.find("multiple_apk") != std::string::npos,
           "varies-marked app must be skipped as multiple_apk");
  c.Expect(results.find("\"app_id\":\"plain\"") != std::string::npos,
           "plain snapshot must be analyzed");
  c.Expect(results.find("\"app_id\":\"nopage\"") != std::string::npos,
           "absent snapshot must be analyzed");
  fs::remove_all(in);
  fs::remove_all(out);
  return c.Done("varies -> skipped, plain -> analyzed, no snapshot -> analyzed");
}

// 8. Determinism, isolation, throughput.
Outcome PipelineDeterminism() {
  Checker c;
  std::mt19937 rng(8);
  fs::path in = testing::ScratchDir("ac8-in");
  for (int i = 0; i < 20; ++i) {
    std::string id = "app" + std::to_string(i);
    WriteBytes(in / (id + ".json"), testing::RandomDescriptor(rng, id, FixtureDb(), 200));
  }
  fs::path db_path = in.parent_path() / "ac8-api.snapshot";
  WriteBytes(db_path, SaveSnapshot(FixtureDb()));

  std::vector<std::string> runs;
  for (int i = 0; i < 2; ++i) {
    fs::path out = testing::ScratchDir("ac8-out" + std::to_string(i));
    std::ostringstream sout, serr;
    int code = RunCli({"scan", in.string(), "--out", out.string(), "--db", db_path.string(),
                       "--jobs", i == 0 ? "1" : "3"},
                      sout, serr);
    c.Expect(code == 0, "scan exited " + std::to_string(code));
    runs.push_back(ReadOutputs(out) + sout.str());
    fs::remove_all(out);
  }
  c.Expect(runs[0] == runs[1], "two runs over the 20-app corpus differ");

  WriteBytes(in / "app7.json", "{\"app_id\": \"app7\", \"refs\": [{\"call_site\": 7}]}");
  fs::path out = testing::ScratchDir("ac8-corrupt");
  std::ostringstream sout, serr;
  int code = RunCli({"scan", in.string(), "--out", out.string(), "--db", db_path.string()}, sout,
                    serr);
  c.Expect(code == 0, "corrupt-app scan exited " + std::to_string(code));
  c.Expect(LineCount(out / "results.jsonl") == 19, "expected 19 reports");
  c.Expect(LineCount(out / "skips.jsonl") == 1 &&
               ReadBytes(out / "skips.jsonl").find("parse_failure") != std::string::npos,
           "expected 1 failure record");
  fs::remove_all(in);
  fs::remove_all(out);

  // Throughput: every descriptor carries the maximum number of refs.
  fs::path big = testing::ScratchDir("ac8-big");
  std::mt19937 big_rng(1000);
  auto entries = FixtureDb().entries();
  for (int i = 0; i < kLargeCorpusApps; ++i) {
    std::string id = "big" + std::to_string(i);
    nlohmann::json doc = nlohmann::json::parse(testing::RandomDescriptor(big_rng, id, FixtureDb(), 0));
    nlohmann::json& refs = doc["refs"];
    for (int r = 0; r < kLargeCorpusRefs; ++r) {
      const ApiSignature& sig =
          entries[testing::Uniform(big_rng, 0, int(entries.size()) - 1)].signature;
      refs.push_back({{"call_site", r % 4 == 0 ? "android/support/v4/app/F" : "com/example/Big"},
                      {"class", sig.class_name},
                      {"member", sig.member},
                      {"descriptor", sig.descriptor}});
    }
    WriteBytes(big / (id + ".json"), doc.dump());
  }
  fs::path big_out = testing::ScratchDir("ac8-big-out");
  CorpusOptions options;
  options.jobs = 1;
  auto start = Clock::now();
  CorpusRun run = RunCorpus(big, big_out, FixtureDb(), options);
  double elapsed = Seconds(start);
  c.Expect(run.analyzed == size_t(kLargeCorpusApps), "large corpus analyzed " +
                                                         std::to_string(run.analyzed));
  c.Expect(elapsed < kCorpusBudgetSeconds, "large corpus took " + Fixed(elapsed) + " s");
  fs::remove_all(big);
  fs::remove_all(big_out);
  return c.Done("20-app reruns byte-identical, corrupt corpus -> 19 reports + 1 failure exit 0, " +
                std::to_string(kLargeCorpusApps) + " x " + std::to_string(kLargeCorpusRefs) +
                " refs single worker " + Fixed(elapsed) + " s < " + Fixed(kCorpusBudgetSeconds) +
                " s");
}

// 9. Threshold changes severity, never existence.
Outcome ThresholdMonotonicity() {
  Checker c;
  std::mt19937 rng(9);
  int corpora = 0;
  for (int round = 0; round < 20; ++round) {
    std::vector<AppProfile> profiles;
    AnalyzerConfig at5;
    int apps = testing::Uniform(rng, 0, 40);
    for (int i = 0; i < apps; ++i) {
      profiles.push_back(LoadAppDescriptor(
          testing::RandomDescriptor(rng, "a" + std::to_string(i), FixtureDb(), 80), at5.prefixes));
    }
    AnalyzerConfig at10 = at5;
    at10.threshold = 10;
    std::vector<ReportSummary> s5, s10;
    for (const auto& p : profiles) {
      s5.push_back(Summarize(AnalyzeApp(p, FixtureDb(), at5)));
      s10.push_back(Summarize(AnalyzeApp(p, FixtureDb(), at10)));
    }
    CorpusStats c5 = Aggregate(s5, 0, 0, MakeRunSettings(FixtureDb(), at5));
    CorpusStats c10 = Aggregate(s10, 0, 0, MakeRunSettings(FixtureDb(), at10));
    c.Expect(MinInconsistentCountAt(s5, 10) <= MinInconsistentCountAt(s5, 5),
             "count_at(10) > count_at(5)");
    c.Expect(c5.inconsistency_counts == c10.inconsistency_counts,
             "existence counts moved with the threshold");
    c.Expect(c5.min_inconsistent_at.at(10) == c10.min_inconsistent_at.at(10),
             "count_at(10) depends on the run threshold");
    ++corpora;
  }
  return c.Done(std::to_string(corpora) +
                " random corpora: count_at(10) <= count_at(5), existence counts unchanged");
}

// 10. Lag and outlier metrics.
Outcome LagAndOutliers() {
  Checker c;
  std::mt19937 rng(10);
  int negatives = 0;
  for (int i = 0; i < kLagTriples; ++i) {
    int min = testing::Uniform(rng, 1, 23);
    int target = i % 5 == 0 ? testing::Uniform(rng, 1, min) : testing::Uniform(rng, 1, 23);
    std::optional<int> max;
    if (testing::Coin(rng, 0.3)) max = testing::Uniform(rng, 1, 25);
    DeclaredSdk d = ResolveDeclared({min, target, max, 0});
    c.Expect(ComputeLag(d) == target - min, "lag for (" + std::to_string(min) + ", " +
                                                std::to_string(target) + ")");
    if (target < min) ++negatives;
  }
  c.Expect(negatives > 0, "no negative lags generated");
  auto above = FlagOutliers(ResolveDeclared({4, 10000, std::nullopt, 0}), 23);
  c.Expect(above.contains(OutlierFlag::kTargetAboveLatest), "target 10000 must be flagged");
  auto zero = FlagOutliers(ResolveDeclared({1, 0, std::nullopt, 0}), 23);
  c.Expect(zero.contains(OutlierFlag::kTargetZero), "target 0 must be flagged");
  c.Expect(FlagOutliers(ResolveDeclared({9, 23, std::nullopt, 0}), 23).empty(),
           "target == latest is not an outlier");
  return c.Done(std::to_string(kLagTriples) + " triples (" + std::to_string(negatives) +
                " negative) exact; 10000 -> TargetAboveLatest, 0 -> TargetZero");
}

}  // namespace
}  // namespace sdklint

int main() {
  using sdklint::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1", sdklint::DefaultsSemantics},     {"AC2", sdklint::SideEffectOne},
      {"AC3", sdklint::SideEffectTwo},         {"AC4", sdklint::EnvelopeOracle},
      {"AC5", sdklint::ParserCrossOracle},     {"AC6", sdklint::DbStatistics},
      {"AC7", sdklint::MultipleApkFilter},     {"AC8", sdklint::PipelineDeterminism},
      {"AC9", sdklint::ThresholdMonotonicity}, {"AC10", sdklint::LagAndOutliers},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << name << " " << (outcome.pass ? "PASS" : "FAIL") << " " << outcome.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
