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

#include "sdklint/api_db.h"

#include <algorithm>
#include <sstream>

#include "digest.h"
#include "expat_reader.h"
#include "json.hpp"
#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

using internal::ParseInt;

namespace {

constexpr std::string_view kSnapshotMagic = "sdklint-api-db";
constexpr int kSnapshotVersion = 1;
constexpr std::string_view kEventsHeader = "signature,event,level";

std::string Describe(const ApiLifetime& e) {
  std::string out = e.signature.ToString() + " added=" +
                    std::to_string(e.added.value());
  if (e.deprecated) out += " deprecated=" + std::to_string(e.deprecated->value());
  if (e.removed) out += " removed=" + std::to_string(e.removed->value());
  return out;
}

// Collects <class>/<method>/<field> entries while expat walks the document.
class ApiVersionsBuilder {
 public:
  void Start(std::string_view name, const XML_Char** attrs) {
    ++depth_;
    if (depth_ == 1) {
      if (name != "api") {
        throw Error(ErrorCode::kMalformedDocument,
                    "unexpected root element <" + std::string(name) + ">");
      }
      return;
    }
    if (depth_ == 2 && name == "class") {
      const XML_Char* cls = internal::FindAttribute(attrs, "name");
      if (cls == nullptr || !IsValidClassPath(cls)) {
        throw Error(ErrorCode::kMalformedDocument, "class without a valid name");
      }
      current_class_ = cls;
      in_class_ = true;
      class_since_ = Level(attrs, "since").value_or(1);
      Add(ApiSignature{current_class_, "", ""}, class_since_, attrs);
      return;
    }
    if (depth_ == 3 && in_class_ && (name == "method" || name == "field")) {
      const XML_Char* raw = internal::FindAttribute(attrs, "name");
      if (raw == nullptr || *raw == '\0') {
        throw Error(ErrorCode::kMalformedDocument,
                    "<" + std::string(name) + "> without a name in " +
                        current_class_);
      }
      std::string_view member_text = raw;
      ApiSignature sig{current_class_, "", ""};
      size_t paren = member_text.find('(');
      if (name == "method" && paren != std::string_view::npos) {
        sig.member = std::string(member_text.substr(0, paren));
        sig.descriptor = std::string(member_text.substr(paren));
      } else {
        sig.member = std::string(member_text);
      }
      Add(std::move(sig), Level(attrs, "since").value_or(class_since_), attrs);
    }
  }

  void End(std::string_view name) {
    if (depth_ == 2 && name == "class") in_class_ = false;
    --depth_;
  }

  ApiLevelDb Finish(std::string digest) {
    std::vector<ApiLifetime> entries;
    entries.reserve(entries_.size());
    for (auto& [sig, lifetime] : entries_) entries.push_back(std::move(lifetime));
    return ApiLevelDb::FromEntries(std::move(entries), ApiLevel(latest_),
                                   std::move(digest),
                                   ErrorCode::kMalformedDocument);
  }

 private:
  std::optional<int> Level(const XML_Char** attrs, std::string_view attr) {
    const XML_Char* raw = internal::FindAttribute(attrs, attr);
    if (raw == nullptr) return std::nullopt;
    std::optional<int> value = ParseInt(raw);
    if (!value || *value < ApiLevel::kMin || *value > ApiLevel::kMax) {
      throw Error(ErrorCode::kMalformedDocument,
                  "bad " + std::string(attr) + "=\"" + raw + "\" in " +
                      current_class_);
    }
    latest_ = std::max(latest_, *value);
    return value;
  }

  void Add(ApiSignature sig, int since, const XML_Char** attrs) {
    latest_ = std::max(latest_, since);
    ApiLifetime lifetime{sig, ApiLevel(since), std::nullopt, std::nullopt};
    if (auto d = Level(attrs, "deprecated")) lifetime.deprecated = ApiLevel(*d);
    if (auto r = Level(attrs, "removed")) lifetime.removed = ApiLevel(*r);
    auto [it, inserted] = entries_.try_emplace(std::move(sig), lifetime);
    if (!inserted && !(it->second == lifetime)) {
      throw Error(ErrorCode::kDuplicateSignature,
                  "conflicting declarations: " + Describe(it->second) +
                      " vs " + Describe(lifetime));
    }
  }

  int depth_ = 0;
  bool in_class_ = false;
  std::string current_class_;
  int class_since_ = 1;
  int latest_ = 1;
  std::map<ApiSignature, ApiLifetime> entries_;
};

std::optional<ApiLevel> ParseOptionalLevel(std::string_view field) {
  if (field == "-") return std::nullopt;
  std::optional<int> v = ParseInt(field);
  if (!v) throw Error(ErrorCode::kCorruptSnapshot, "bad level field");
  return ApiLevel(*v);
}

}  // namespace

ApiLevelDb ApiLevelDb::FromEntries(std::vector<ApiLifetime> entries,
                                   ApiLevel latest_level, std::string digest,
                                   ErrorCode code) {
  ApiLevelDb db;
  std::sort(entries.begin(), entries.end(),
            [](const ApiLifetime& a, const ApiLifetime& b) {
              return a.signature < b.signature;
            });
  db.index_.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    const ApiLifetime& e = entries[i];
    if (!IsValidClassPath(e.signature.class_name)) {
      throw Error(code, "entry with invalid class path");
    }
    if (!e.IsOrdered()) {
      throw Error(code, "lifetime out of order: " + Describe(e));
    }
    if (e.added > latest_level) {
      throw Error(code, "added level above latest level: " + Describe(e));
    }
    if (!db.index_.emplace(e.signature, i).second) {
      throw Error(code, "duplicate signature: " + e.signature.ToString());
    }
  }
  db.entries_ = std::move(entries);
  db.latest_level_ = latest_level;
  db.source_digest_ = std::move(digest);
  return db;
}

const ApiLifetime* ApiLevelDb::Find(const ApiSignature& signature) const {
  auto it = index_.find(signature);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

ApiLevelDb ParseApiVersions(std::string_view document) {
  ApiVersionsBuilder builder;
  internal::ExpatReader reader(/*namespaces=*/false);
  reader.OnStart([&](std::string_view name, const XML_Char** attrs) {
    builder.Start(name, attrs);
  });
  reader.OnEnd([&](std::string_view name) { builder.End(name); });
  if (auto error = reader.Parse(document)) {
    throw Error(ErrorCode::kMalformedDocument, "api-versions: " + *error);
  }
  return builder.Finish(internal::Sha256Hex(document));
}

ChangeResult ApplyChangeEvents(const ApiLevelDb& db, std::string_view csv) {
  ChangeResult result;
  std::vector<std::string_view> lines = internal::SplitLines(csv);
  size_t header = 0;
  while (header < lines.size() && internal::Trim(lines[header]).empty()) {
    ++header;
  }
  if (header == lines.size()) {
    result.db = db;
    return result;
  }
  if (internal::Trim(lines[header]) != kEventsHeader) {
    throw Error(ErrorCode::kMalformedDocument,
                "change events: expected header '" + std::string(kEventsHeader) +
                    "'");
  }

  struct Row {
    size_t line;
    ApiSignature sig;
    std::string event;
    int level;
  };
  std::vector<Row> rows;
  std::map<ApiSignature, int> present_at;
  auto warn = [&](size_t line, ChangeWarningKind kind, std::string sig,
                  std::string message) {
    result.warnings.push_back({line, kind, std::move(sig), std::move(message)});
  };

  for (size_t i = header + 1; i < lines.size(); ++i) {
    std::string_view line = internal::Trim(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string_view> fields = internal::Split(line, ',');
    if (fields.size() != 3) {
      warn(i + 1, ChangeWarningKind::kMalformedRow, std::string(line),
           "expected 3 fields");
      continue;
    }
    std::string_view sig_text = internal::Trim(fields[0]);
    std::string event(internal::Trim(fields[1]));
    std::optional<ApiSignature> sig = ApiSignature::Parse(sig_text);
    std::optional<int> level = ParseInt(fields[2]);
    if (!sig || !level || *level < ApiLevel::kMin || *level > ApiLevel::kMax ||
        (event != "deprecated" && event != "removed" && event != "present")) {
      warn(i + 1, ChangeWarningKind::kMalformedRow, std::string(sig_text),
           "unparseable row");
      continue;
    }
    if (db.Find(*sig) == nullptr) {
      warn(i + 1, ChangeWarningKind::kUnknownSignature, std::string(sig_text),
           "signature not in db");
      continue;
    }
    if (event == "present") {
      int& at = present_at[*sig];
      at = std::max(at, *level);
      continue;
    }
    rows.push_back({i + 1, std::move(*sig), std::move(event), *level});
  }

  std::vector<ApiLifetime> entries(db.entries().begin(), db.entries().end());
  auto slot = [&](const ApiSignature& sig) -> ApiLifetime& {
    auto it = std::lower_bound(entries.begin(), entries.end(), sig,
                               [](const ApiLifetime& e, const ApiSignature& s) {
                                 return e.signature < s;
                               });
    return *it;
  };
  int latest = db.latest_level().value();
  for (const Row& row : rows) {
    ApiLifetime& entry = slot(row.sig);
    ApiLifetime candidate = entry;
    if (row.event == "removed") {
      auto present = present_at.find(row.sig);
      if (present != present_at.end() && row.level <= present->second) {
        warn(row.line, ChangeWarningKind::kInvalidOrdering,
             row.sig.ToString(),
             "removed at " + std::to_string(row.level) +
                 " but still present at " + std::to_string(present->second));
        continue;
      }
      candidate.removed = ApiLevel(row.level);
    } else {
      candidate.deprecated = ApiLevel(row.level);
    }
    if (!candidate.IsOrdered()) {
      warn(row.line, ChangeWarningKind::kInvalidOrdering, row.sig.ToString(),
           "would give " + Describe(candidate));
      continue;
    }
    entry = std::move(candidate);
    latest = std::max(latest, row.level);
    ++result.applied;
  }

  result.db = ApiLevelDb::FromEntries(
      std::move(entries), ApiLevel(latest),
      internal::Sha256Hex(db.source_digest() + "\n" + std::string(csv)),
      ErrorCode::kMalformedDocument);
  return result;
}

std::optional<ApiLifetime> Lookup(const ApiLevelDb& db, const MethodRef& ref) {
  const ApiLifetime* found = db.Find(ref.target);
  if (found == nullptr) return std::nullopt;
  return *found;
}

DbStats ComputeDbStats(const ApiLevelDb& db) {
  DbStats stats;
  stats.total = db.size();
  for (const ApiLifetime& e : db.entries()) {
    ++stats.added_per_level[e.added.value()];
    if (e.deprecated) ++stats.deprecated_count;
    if (e.removed) ++stats.removed_count;
  }
  stats.latest_level = db.empty() ? 0 : db.latest_level().value();
  return stats;
}

std::string DbStatsToJson(const DbStats& stats) {
  nlohmann::ordered_json histogram = nlohmann::ordered_json::array();
  for (const auto& [level, count] : stats.added_per_level) {
    histogram.push_back({{"level", level}, {"count", count}});
  }
  nlohmann::ordered_json j;
  j["total"] = stats.total;
  j["deprecated"] = stats.deprecated_count;
  j["removed"] = stats.removed_count;
  j["latest_level"] = stats.latest_level;
  j["added_per_level"] = std::move(histogram);
  return j.dump(2);
}

std::string SaveSnapshot(const ApiLevelDb& db) {
  std::ostringstream out;
  out << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
  out << "latest " << db.latest_level().value() << '\n';
  out << "digest " << (db.source_digest().empty() ? "-" : db.source_digest())
      << '\n';
  out << "entries " << db.size() << '\n';
  for (const ApiLifetime& e : db.entries()) {
    out << e.signature.ToString() << '\t' << e.added.value() << '\t';
    if (e.deprecated) out << e.deprecated->value(); else out << '-';
    out << '\t';
    if (e.removed) out << e.removed->value(); else out << '-';
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

ApiLevelDb LoadSnapshot(std::string_view bytes) {
  auto corrupt = [](const std::string& what) {
    return Error(ErrorCode::kCorruptSnapshot, "snapshot: " + what);
  };
  std::vector<std::string_view> lines = internal::SplitLines(bytes);
  auto keyed = [&](size_t i, std::string_view key) -> std::string_view {
    if (i >= lines.size() || !internal::StartsWith(lines[i], key) ||
        lines[i].size() <= key.size() || lines[i][key.size()] != ' ') {
      throw corrupt("missing '" + std::string(key) + "' line");
    }
    return lines[i].substr(key.size() + 1);
  };

  std::optional<int> version = ParseInt(keyed(0, kSnapshotMagic));
  if (!version) throw corrupt("bad version field");
  if (*version != kSnapshotVersion) {
    throw Error(ErrorCode::kSnapshotVersionMismatch,
                "snapshot version " + std::to_string(*version) +
                    ", expected " + std::to_string(kSnapshotVersion));
  }
  std::optional<int> latest = ParseInt(keyed(1, "latest"));
  std::string digest(keyed(2, "digest"));
  if (digest == "-") digest.clear();
  std::optional<int> count = ParseInt(keyed(3, "entries"));
  if (!latest || *latest < ApiLevel::kMin || *latest > ApiLevel::kMax ||
      !count || *count < 0) {
    throw corrupt("bad header");
  }
  size_t first = 4;
  size_t n = static_cast<size_t>(*count);
  if (lines.size() < first + n + 1 || lines[first + n] != "end") {
    throw corrupt("truncated or missing end marker");
  }
  for (size_t i = first + n + 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) throw corrupt("trailing data after end marker");
  }

  std::vector<ApiLifetime> entries;
  entries.reserve(n);
  try {
    for (size_t i = first; i < first + n; ++i) {
      std::vector<std::string_view> f = internal::Split(lines[i], '\t');
      if (f.size() != 4) throw corrupt("bad entry at line " + std::to_string(i + 1));
      std::optional<ApiSignature> sig = ApiSignature::Parse(f[0]);
      std::optional<int> added = ParseInt(f[1]);
      if (!sig || !added) {
        throw corrupt("bad entry at line " + std::to_string(i + 1));
      }
      if (!entries.empty() && !(entries.back().signature < *sig)) {
        throw corrupt("entries not sorted at line " + std::to_string(i + 1));
      }
      entries.push_back({std::move(*sig), ApiLevel(*added),
                         ParseOptionalLevel(f[2]), ParseOptionalLevel(f[3])});
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidLevel) throw corrupt(e.what());
    throw;
  }
  return ApiLevelDb::FromEntries(std::move(entries), ApiLevel(*latest),
                                 std::move(digest), ErrorCode::kCorruptSnapshot);
}

}  // namespace sdklint
