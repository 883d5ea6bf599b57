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

#include "sdklint/report.h"

#include "json.hpp"
#include "sdklint/error.h"

namespace sdklint {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json OptionalInt(const std::optional<int>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

[[noreturn]] void Schema(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, "report: " + what);
}

const json& Field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) Schema(std::string("missing field ") + key);
  return *it;
}

int IntField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_number_integer()) Schema(std::string(key) + " must be an integer");
  return v.get<int>();
}

bool BoolField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_boolean()) Schema(std::string(key) + " must be a boolean");
  return v.get<bool>();
}

const json& ArrayField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_array()) Schema(std::string(key) + " must be an array");
  return v;
}

}  // namespace

std::string ReportToJson(const AnalysisReport& r, bool include_breakdown) {
  ordered_json j;
  j["app_id"] = r.app_id;

  ordered_json& d = j["declared"];
  d["min"] = r.declared.min;
  d["target"] = r.declared.target;
  d["max"] = OptionalInt(r.declared.max);
  d["min_defined"] = r.declared.min_defined;
  d["target_defined"] = r.declared.target_defined;
  d["max_defined"] = r.declared.max_defined;

  ordered_json& e = j["envelope"];
  e["min_level"] = r.envelope.min_level;
  e["max_level"] = r.envelope.max_or_sentinel();
  e["unbounded"] = !r.envelope.bounded();
  e["resolved_count"] = r.envelope.resolved_count;
  e["unresolved_count"] = r.envelope.unresolved_count;
  if (include_breakdown) {
    ordered_json apis = ordered_json::array();
    for (const auto& [sig, use] : r.envelope.per_api) {
      ordered_json a;
      a["api"] = sig.ToString();
      a["added"] = use.added;
      a["removed"] = OptionalInt(use.removed);
      a["occurrences"] = use.occurrences;
      apis.push_back(std::move(a));
    }
    e["per_api_breakdown"] = std::move(apis);
  }

  j["min_level_with_lib"] = r.min_level_with_lib;
  j["api_call_count"] = r.api_call_count;
  j["ref_count"] = r.ref_count;
  j["own_ref_count"] = r.own_ref_count;

  ordered_json incs = ordered_json::array();
  for (const Inconsistency& inc : r.inconsistencies) {
    ordered_json i;
    i["kind"] = InconsistencyKindName(inc.kind);
    i["gate_passed"] = inc.gate_passed;
    i["occurrences"] = inc.occurrences;
    ordered_json apis = ordered_json::array();
    for (const OffendingApi& api : inc.offending_apis) {
      apis.push_back(ordered_json{{"api", api.api.ToString()},
                                  {"level", api.level},
                                  {"occurrences", api.occurrences}});
    }
    i["offending_apis"] = std::move(apis);
    incs.push_back(std::move(i));
  }
  j["inconsistencies"] = std::move(incs);

  ordered_json vulns = ordered_json::array();
  for (const VulnFinding& v : r.vulnerabilities) {
    ordered_json f;
    f["api"] = v.rule.api.ToString();
    f["fixed_at_target"] = v.rule.fixed_at_target;
    f["description"] = v.rule.description;
    f["effective_target"] = v.effective_target;
    f["target_was_null"] = v.target_was_null;
    f["occurrences"] = v.occurrences;
    vulns.push_back(std::move(f));
  }
  j["vulnerabilities"] = std::move(vulns);

  j["lag"] = r.lag;
  ordered_json flags = ordered_json::array();
  for (OutlierFlag flag : r.outlier_flags) flags.push_back(OutlierFlagName(flag));
  j["outlier_flags"] = std::move(flags);
  return j.dump();
}

ReportSummary Summarize(const AnalysisReport& r) {
  ReportSummary s;
  s.app_id = r.app_id;
  s.declared = r.declared;
  s.min_level = r.envelope.min_level;
  s.min_level_with_lib = r.min_level_with_lib;
  s.api_call_count = r.api_call_count;
  for (const Inconsistency& inc : r.inconsistencies) {
    s.inconsistencies[inc.kind] += inc.occurrences;
  }
  s.vulnerability_count = r.vulnerabilities.size();
  for (const VulnFinding& v : r.vulnerabilities) {
    s.vulnerable_null_target = s.vulnerable_null_target || v.target_was_null;
  }
  s.lag = r.lag;
  s.outlier_flags = r.outlier_flags;
  return s;
}

ReportSummary SummaryFromJson(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) Schema("not a JSON object");

  ReportSummary s;
  const json& id = Field(j, "app_id");
  if (!id.is_string()) Schema("app_id must be a string");
  s.app_id = id.get<std::string>();

  const json& d = Field(j, "declared");
  if (!d.is_object()) Schema("declared must be an object");
  s.declared.min = IntField(d, "min");
  s.declared.target = IntField(d, "target");
  if (const json& max = Field(d, "max"); !max.is_null()) {
    if (!max.is_number_integer()) Schema("max must be an integer or null");
    s.declared.max = max.get<int>();
  }
  s.declared.min_defined = BoolField(d, "min_defined");
  s.declared.target_defined = BoolField(d, "target_defined");
  s.declared.max_defined = BoolField(d, "max_defined");

  const json& e = Field(j, "envelope");
  if (!e.is_object()) Schema("envelope must be an object");
  s.min_level = IntField(e, "min_level");
  s.min_level_with_lib = IntField(j, "min_level_with_lib");
  const json& calls = Field(j, "api_call_count");
  if (!calls.is_number_unsigned()) Schema("api_call_count must be a count");
  s.api_call_count = calls.get<size_t>();

  for (const json& inc : ArrayField(j, "inconsistencies")) {
    if (!inc.is_object()) Schema("inconsistency must be an object");
    const json& kind = Field(inc, "kind");
    auto parsed = kind.is_string() ? ParseInconsistencyKind(kind.get<std::string>())
                                   : std::nullopt;
    if (!parsed) Schema("unknown inconsistency kind");
    const json& n = Field(inc, "occurrences");
    if (!n.is_number_unsigned()) Schema("occurrences must be a count");
    s.inconsistencies[*parsed] += n.get<size_t>();
  }
  for (const json& v : ArrayField(j, "vulnerabilities")) {
    if (!v.is_object()) Schema("vulnerability must be an object");
    ++s.vulnerability_count;
    s.vulnerable_null_target = s.vulnerable_null_target || BoolField(v, "target_was_null");
  }
  s.lag = IntField(j, "lag");
  for (const json& f : ArrayField(j, "outlier_flags")) {
    auto flag = f.is_string() ? ParseOutlierFlag(f.get<std::string>()) : std::nullopt;
    if (!flag) Schema("unknown outlier flag");
    s.outlier_flags.insert(*flag);
  }
  return s;
}

}  // namespace sdklint
