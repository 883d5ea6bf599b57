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

#include "sdklint/analyzer.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>

#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

namespace {

constexpr std::array<std::pair<InconsistencyKind, std::string_view>, 4> kKindNames{{
    {InconsistencyKind::kMinBelowMinLevel, "MinBelowMinLevel"},
    {InconsistencyKind::kTargetBelowMaxLevel, "TargetBelowMaxLevel"},
    {InconsistencyKind::kMaxAboveMaxLevel, "MaxAboveMaxLevel"},
    {InconsistencyKind::kInfeasibleApiSet, "InfeasibleApiSet"},
}};

constexpr std::array<std::pair<OutlierFlag, std::string_view>, 3> kFlagNames{{
    {OutlierFlag::kTargetZero, "TargetZero"},
    {OutlierFlag::kTargetAboveLatest, "TargetAboveLatest"},
    {OutlierFlag::kNegativeLag, "NegativeLag"},
}};

Inconsistency Collect(InconsistencyKind kind, const LevelEnvelope& envelope,
                      auto&& select) {
  Inconsistency out;
  out.kind = kind;
  for (const auto& [api, use] : envelope.per_api) {
    if (auto level = select(use)) {
      out.offending_apis.push_back(OffendingApi{api, *level, use.occurrences});
      out.occurrences += use.occurrences;
    }
  }
  return out;
}

}  // namespace

DeclaredSdk ResolveDeclared(const DeclaredSdkRaw& raw) {
  DeclaredSdk d;
  d.min_defined = raw.min_raw.has_value();
  d.target_defined = raw.target_raw.has_value();
  d.max_defined = raw.max_raw.has_value();
  d.min = raw.min_raw.value_or(1);
  d.target = raw.target_raw.value_or(d.min);
  d.max = raw.max_raw;
  return d;
}

DeclaredSdkRaw RawProjection(const DeclaredSdk& declared) {
  DeclaredSdkRaw raw;
  if (declared.min_defined) raw.min_raw = declared.min;
  if (declared.target_defined) raw.target_raw = declared.target;
  if (declared.max_defined) raw.max_raw = declared.max;
  return raw;
}

bool LevelEnvelope::Contains(int level) const {
  return level >= min_level && (!max_level || level <= *max_level);
}

LevelEnvelope ComputeEnvelope(std::span<const MethodRef> refs, const ApiLevelDb& db) {
  LevelEnvelope env;
  // Count per distinct target first; most apps hit the same APIs repeatedly.
  std::unordered_map<const ApiLifetime*, size_t> counts;
  for (const MethodRef& ref : refs) {
    const ApiLifetime* life = db.Find(ref.target);
    if (life == nullptr) {
      ++env.unresolved_count;
      continue;
    }
    ++env.resolved_count;
    ++counts[life];
  }
  for (const auto& [life, n] : counts) {
    ApiUse use;
    use.added = life->added.value();
    if (life->removed) use.removed = life->removed->value();
    use.occurrences = n;
    env.min_level = std::max(env.min_level, use.added);
    if (use.removed) {
      int last = *use.removed - 1;
      env.max_level = env.max_level ? std::min(*env.max_level, last) : last;
    }
    env.per_api.emplace(life->signature, use);
  }
  return env;
}

std::string_view InconsistencyKindName(InconsistencyKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<InconsistencyKind> ParseInconsistencyKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::vector<Inconsistency> CheckConsistency(const DeclaredSdk& declared,
                                            const LevelEnvelope& envelope,
                                            int latest, int threshold) {
  if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
  std::vector<Inconsistency> found;
  using Level = std::optional<int>;

  if (declared.min < envelope.min_level) {
    Inconsistency inc = Collect(InconsistencyKind::kMinBelowMinLevel, envelope,
                                [&](const ApiUse& u) -> Level {
                                  if (u.added > declared.min) return u.added;
                                  return std::nullopt;
                                });
    inc.gate_passed = inc.occurrences >= static_cast<size_t>(threshold);
    found.push_back(std::move(inc));
  }

  int ceiling = envelope.max_level ? std::min(*envelope.max_level, latest) : latest;
  if (declared.target < ceiling) {
    // Only a removal can hold the target down below latest; name it.
    bool removal_bound = envelope.max_level && *envelope.max_level <= latest;
    found.push_back(Collect(InconsistencyKind::kTargetBelowMaxLevel, envelope,
                            [&](const ApiUse& u) -> Level {
                              if (removal_bound && u.removed &&
                                  *u.removed - 1 == *envelope.max_level) {
                                return u.removed;
                              }
                              return std::nullopt;
                            }));
  }

  if (declared.max && envelope.max_level && *declared.max > *envelope.max_level) {
    found.push_back(Collect(InconsistencyKind::kMaxAboveMaxLevel, envelope,
                            [&](const ApiUse& u) -> Level {
                              if (u.removed && *u.removed <= *declared.max) return u.removed;
                              return std::nullopt;
                            }));
  }

  if (envelope.max_level && envelope.min_level > *envelope.max_level) {
    found.push_back(Collect(InconsistencyKind::kInfeasibleApiSet, envelope,
                            [&](const ApiUse& u) -> Level {
                              if (u.added == envelope.min_level) return u.added;
                              if (u.removed && *u.removed - 1 == *envelope.max_level) {
                                return u.removed;
                              }
                              return std::nullopt;
                            }));
  }
  return found;
}

std::vector<VulnRule> ParseVulnRules(std::string_view csv) {
  std::vector<VulnRule> rules;
  auto lines = internal::SplitLines(csv);
  size_t line_no = 0;
  bool header_seen = false;
  for (std::string_view line : lines) {
    ++line_no;
    std::string_view trimmed = internal::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kSchemaViolation,
                   "rules line " + std::to_string(line_no) + ": " + what);
    };
    if (!header_seen) {
      if (trimmed != "signature,fixed_at_target,description") {
        throw fail("expected header signature,fixed_at_target,description");
      }
      header_seen = true;
      continue;
    }
    size_t c1 = trimmed.find(',');
    size_t c2 = c1 == std::string_view::npos ? c1 : trimmed.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw fail("expected three columns");
    auto sig = ApiSignature::Parse(internal::Trim(trimmed.substr(0, c1)));
    if (!sig || sig->member.empty()) throw fail("bad method signature");
    auto fixed = internal::ParseInt(trimmed.substr(c1 + 1, c2 - c1 - 1));
    if (!fixed || *fixed < 2 || *fixed > ApiLevel::kMax) {
      throw fail("fixed_at_target must be an integer level >= 2");
    }
    std::string_view description = internal::Trim(trimmed.substr(c2 + 1));
    if (description.size() >= 2 && description.front() == '"' &&
        description.back() == '"') {
      description = description.substr(1, description.size() - 2);
    }
    rules.push_back(VulnRule{std::move(*sig), *fixed, std::string(description)});
  }
  return rules;
}

const std::vector<VulnRule>& DefaultVulnRules() {
  static const auto* rules = new std::vector<VulnRule>{VulnRule{
      ApiSignature{"android/webkit/WebView", "addJavascriptInterface",
                   "(Ljava/lang/Object;Ljava/lang/String;)V"},
      17,
      "JavaScript can reach every public method of the injected object "
      "(reflection) unless the app targets 17 or higher"}};
  return *rules;
}

std::vector<VulnFinding> CheckVulnerabilities(const DeclaredSdk& declared,
                                              std::span<const MethodRef> refs,
                                              std::span<const VulnRule> rules) {
  std::vector<VulnFinding> findings;
  for (const VulnRule& rule : rules) {
    if (declared.target >= rule.fixed_at_target) continue;
    size_t hits = std::count_if(refs.begin(), refs.end(), [&](const MethodRef& r) {
      return r.target == rule.api;
    });
    if (hits == 0) continue;
    findings.push_back(
        VulnFinding{rule, declared.target, !declared.target_defined, hits});
  }
  return findings;
}

int ComputeLag(const DeclaredSdk& declared) { return declared.target - declared.min; }

std::string_view OutlierFlagName(OutlierFlag flag) {
  for (const auto& [f, name] : kFlagNames) {
    if (f == flag) return name;
  }
  return "?";
}

std::optional<OutlierFlag> ParseOutlierFlag(std::string_view name) {
  for (const auto& [f, n] : kFlagNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::set<OutlierFlag> FlagOutliers(const DeclaredSdk& declared, int latest) {
  std::set<OutlierFlag> flags;
  if (declared.target_defined && declared.target == 0) {
    flags.insert(OutlierFlag::kTargetZero);
  }
  if (declared.target > latest) flags.insert(OutlierFlag::kTargetAboveLatest);
  if (ComputeLag(declared) < 0) flags.insert(OutlierFlag::kNegativeLag);
  return flags;
}

int EffectiveLatest(const ApiLevelDb& db, const AnalyzerConfig& config) {
  return config.latest_override.value_or(db.latest_level().value());
}

AnalysisReport AnalyzeApp(const AppProfile& profile, const ApiLevelDb& db,
                          const AnalyzerConfig& config) {
  const int latest = EffectiveLatest(db, config);
  std::vector<MethodRef> own = FilterLibraryCalls(profile.all_refs, config.prefixes);

  AnalysisReport report;
  report.app_id = profile.app_id;
  report.declared = ResolveDeclared(profile.declared);
  report.envelope = ComputeEnvelope(own, db);
  LevelEnvelope with_lib = ComputeEnvelope(profile.all_refs, db);
  report.min_level_with_lib = with_lib.min_level;
  report.api_call_count = with_lib.resolved_count;
  report.ref_count = profile.all_refs.size();
  report.own_ref_count = own.size();
  report.inconsistencies =
      CheckConsistency(report.declared, report.envelope, latest, config.threshold);
  report.vulnerabilities = CheckVulnerabilities(report.declared, own, config.rules);
  report.lag = ComputeLag(report.declared);
  report.outlier_flags = FlagOutliers(report.declared, latest);
  return report;
}

}  // namespace sdklint
