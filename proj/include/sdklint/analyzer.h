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

#ifndef SDKLINT_ANALYZER_H_
#define SDKLINT_ANALYZER_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdklint/api_db.h"
#include "sdklint/api_types.h"
#include "sdklint/app_profile.h"
#include "sdklint/manifest.h"

namespace sdklint {

// Effective declaration. Values are plain ints because out-of-range raw
// values (target 0, target 10000) are kept and flagged, not rejected.
struct DeclaredSdk {
  int min = 1;
  int target = 1;
  std::optional<int> max;  // absent: no upper bound
  bool min_defined = false;
  bool target_defined = false;
  bool max_defined = false;

  friend bool operator==(const DeclaredSdk&, const DeclaredSdk&) = default;
};

// min defaults to 1, target to the effective min, max to unbounded.
DeclaredSdk ResolveDeclared(const DeclaredSdkRaw& raw);

// The raw triple that resolves back to `declared`.
DeclaredSdkRaw RawProjection(const DeclaredSdk& declared);

// Serialized stand-in for an unbounded max_level.
inline constexpr int kUnboundedLevel = 100000;

struct ApiUse {
  int added = 1;
  std::optional<int> removed;
  size_t occurrences = 0;

  friend bool operator==(const ApiUse&, const ApiUse&) = default;
};

// Levels at which every resolvable referenced API exists: the closed interval
// [min_level, max_level]. max_level is one below the earliest removal, or
// unbounded when nothing referenced was ever removed.
struct LevelEnvelope {
  int min_level = 1;
  std::optional<int> max_level;
  std::map<ApiSignature, ApiUse> per_api;
  size_t resolved_count = 0;  // invoke sites found in the db
  size_t unresolved_count = 0;

  bool bounded() const { return max_level.has_value(); }
  int max_or_sentinel() const { return max_level.value_or(kUnboundedLevel); }
  // True when `level` lies inside the interval.
  bool Contains(int level) const;

  friend bool operator==(const LevelEnvelope&, const LevelEnvelope&) = default;
};

LevelEnvelope ComputeEnvelope(std::span<const MethodRef> refs, const ApiLevelDb& db);

enum class InconsistencyKind {
  kMinBelowMinLevel,
  kTargetBelowMaxLevel,
  kMaxAboveMaxLevel,
  kInfeasibleApiSet,
};

std::string_view InconsistencyKindName(InconsistencyKind kind);
std::optional<InconsistencyKind> ParseInconsistencyKind(std::string_view name);

struct OffendingApi {
  ApiSignature api;
  int level = 0;  // added for min checks, removed for upper-bound checks
  size_t occurrences = 0;

  friend bool operator==(const OffendingApi&, const OffendingApi&) = default;
};

struct Inconsistency {
  InconsistencyKind kind = InconsistencyKind::kMinBelowMinLevel;
  std::vector<OffendingApi> offending_apis;  // sorted by signature
  size_t occurrences = 0;                    // sum over offending_apis
  // Severity gate. For kMinBelowMinLevel: occurrences >= threshold. The
  // other kinds have no per-call notion of severity and always pass.
  bool gate_passed = true;

  friend bool operator==(const Inconsistency&, const Inconsistency&) = default;
};

// `latest` is the level an app could move its target to when nothing it uses
// was removed. Throws std::invalid_argument for threshold < 1.
std::vector<Inconsistency> CheckConsistency(const DeclaredSdk& declared,
                                            const LevelEnvelope& envelope,
                                            int latest, int threshold);

struct VulnRule {
  ApiSignature api;
  int fixed_at_target = 2;
  std::string description;

  friend bool operator==(const VulnRule&, const VulnRule&) = default;
};

// CSV with header `signature,fixed_at_target,description`. The description
// column may contain commas. Throws kSchemaViolation.
std::vector<VulnRule> ParseVulnRules(std::string_view csv);

// The addJavascriptInterface rule, fixed when targeting 17.
const std::vector<VulnRule>& DefaultVulnRules();

struct VulnFinding {
  VulnRule rule;
  int effective_target = 1;
  bool target_was_null = false;
  size_t occurrences = 0;

  friend bool operator==(const VulnFinding&, const VulnFinding&) = default;
};

// One finding per rule whose API appears in `refs` while the effective target
// is below the fixed level. Pass own (library-filtered) refs.
std::vector<VulnFinding> CheckVulnerabilities(const DeclaredSdk& declared,
                                              std::span<const MethodRef> refs,
                                              std::span<const VulnRule> rules);

// target - min on effective values.
int ComputeLag(const DeclaredSdk& declared);

enum class OutlierFlag { kTargetZero, kTargetAboveLatest, kNegativeLag };

std::string_view OutlierFlagName(OutlierFlag flag);
std::optional<OutlierFlag> ParseOutlierFlag(std::string_view name);

std::set<OutlierFlag> FlagOutliers(const DeclaredSdk& declared, int latest);

struct AnalyzerConfig {
  std::vector<std::string> prefixes = DefaultLibraryPrefixes();
  int threshold = 5;
  std::vector<VulnRule> rules = DefaultVulnRules();
  std::optional<int> latest_override;
};

struct AnalysisReport {
  std::string app_id;
  DeclaredSdk declared;
  LevelEnvelope envelope;  // over own refs
  // min_level over all refs, library call sites included.
  int min_level_with_lib = 1;
  // Invoke sites over all refs that resolve to a framework API.
  size_t api_call_count = 0;
  size_t ref_count = 0;
  size_t own_ref_count = 0;
  std::vector<Inconsistency> inconsistencies;
  std::vector<VulnFinding> vulnerabilities;
  int lag = 0;
  std::set<OutlierFlag> outlier_flags;

  bool HasFindings() const {
    return !inconsistencies.empty() || !vulnerabilities.empty();
  }
};

// resolve -> envelope over own refs -> consistency -> vulnerabilities -> lag
// -> outliers. Own refs are recomputed from all_refs with config.prefixes.
AnalysisReport AnalyzeApp(const AppProfile& profile, const ApiLevelDb& db,
                          const AnalyzerConfig& config);

// config.latest_override, else the db's latest level.
int EffectiveLatest(const ApiLevelDb& db, const AnalyzerConfig& config);

}  // namespace sdklint

#endif  // SDKLINT_ANALYZER_H_
