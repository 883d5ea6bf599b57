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

#ifndef SDKLINT_API_DB_H_
#define SDKLINT_API_DB_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdklint/api_types.h"
#include "sdklint/error.h"

namespace sdklint {

// Immutable mapping from framework API signature to its lifetime. Entries are
// kept sorted by signature; lookups go through a hash index. Safe to share
// between threads once built.
class ApiLevelDb {
 public:
  ApiLevelDb() = default;

  // Validates uniqueness, per-entry ordering and added <= latest. Throws
  // Error(`code`) on the first violation.
  static ApiLevelDb FromEntries(std::vector<ApiLifetime> entries,
                                ApiLevel latest_level, std::string digest,
                                ErrorCode code);

  const ApiLifetime* Find(const ApiSignature& signature) const;

  std::span<const ApiLifetime> entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  ApiLevel latest_level() const { return latest_level_; }
  const std::string& source_digest() const { return source_digest_; }

  friend bool operator==(const ApiLevelDb& a, const ApiLevelDb& b) {
    return a.latest_level_ == b.latest_level_ &&
           a.source_digest_ == b.source_digest_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<ApiLifetime> entries_;
  std::unordered_map<ApiSignature, size_t, ApiSignatureHash> index_;
  ApiLevel latest_level_{1};
  std::string source_digest_;
};

// Parses an api-versions document (<api> root, <class>/<method>/<field>
// children with since/deprecated/removed attributes). Members without their
// own `since` inherit the class value; classes without one default to 1.
// Throws kMalformedDocument or kDuplicateSignature.
ApiLevelDb ParseApiVersions(std::string_view document);

enum class ChangeWarningKind { kUnknownSignature, kInvalidOrdering, kMalformedRow };

struct ChangeWarning {
  size_t line = 0;  // 1-based line in the CSV
  ChangeWarningKind kind = ChangeWarningKind::kMalformedRow;
  std::string signature;
  std::string message;
};

struct ChangeResult {
  ApiLevelDb db;
  size_t applied = 0;
  std::vector<ChangeWarning> warnings;
};

// Applies a `signature,event,level` CSV. Events:
//   deprecated  sets the deprecation level
//   removed     sets the removal level
//   present     asserts the API still exists at that level; any removed
//               event at or below it is rejected
// Later rows for the same (signature, event) overwrite earlier ones. Rows
// that name an unknown API or would break the lifetime ordering are skipped
// and reported. Throws kMalformedDocument if a non-empty CSV lacks the header.
ChangeResult ApplyChangeEvents(const ApiLevelDb& db, std::string_view csv);

// Exact (class, member, descriptor) match on the reference target; no
// superclass resolution.
std::optional<ApiLifetime> Lookup(const ApiLevelDb& db, const MethodRef& ref);

struct DbStats {
  size_t total = 0;
  std::map<int, size_t> added_per_level;
  size_t deprecated_count = 0;
  size_t removed_count = 0;
  int latest_level = 0;  // 0 for an empty db

  friend bool operator==(const DbStats&, const DbStats&) = default;
};

DbStats ComputeDbStats(const ApiLevelDb& db);
std::string DbStatsToJson(const DbStats& stats);

// Versioned, line-oriented snapshot. Equal dbs produce identical bytes.
std::string SaveSnapshot(const ApiLevelDb& db);
// Throws kSnapshotVersionMismatch or kCorruptSnapshot.
ApiLevelDb LoadSnapshot(std::string_view bytes);

}  // namespace sdklint

#endif  // SDKLINT_API_DB_H_
