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

#include "sdklint/app_profile.h"

#include <cstdint>

#include "json.hpp"
#include "sdklint/apk.h"
#include "sdklint/dex.h"
#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

namespace {

using nlohmann::json;

[[noreturn]] void Schema(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, "descriptor: " + what);
}

std::optional<int> OptionalLevel(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) Schema(std::string(key) + " must be an integer or null");
  auto value = it->get<int64_t>();
  if (value < INT32_MIN || value > INT32_MAX) Schema(std::string(key) + " out of range");
  return static_cast<int>(value);
}

const std::string& RequiredString(const json& obj, const char* key, size_t index) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    Schema("refs[" + std::to_string(index) + "]." + key + " must be a string");
  }
  return it->get_ref<const std::string&>();
}

// Accepts both internal paths and L...; descriptors for class fields.
std::string ClassPath(const std::string& text, const char* key, size_t index) {
  std::string path = TypeDescriptorToInternal(text);
  if (!IsValidClassPath(path)) {
    Schema("refs[" + std::to_string(index) + "]." + key + " is not a class path");
  }
  return path;
}

}  // namespace

const std::vector<std::string>& DefaultLibraryPrefixes() {
  static const auto* prefixes = new std::vector<std::string>{
      "android/support/", "androidx/",  "com/google/android/gms/",
      "com/android/",     "kotlin/",    "org/apache/http/",
  };
  return *prefixes;
}

std::vector<MethodRef> FilterLibraryCalls(std::span<const MethodRef> refs,
                                          std::span<const std::string> prefixes) {
  std::vector<MethodRef> kept;
  kept.reserve(refs.size());
  for (const MethodRef& ref : refs) {
    bool library = false;
    for (const std::string& prefix : prefixes) {
      if (internal::StartsWith(ref.call_site_class, prefix)) {
        library = true;
        break;
      }
    }
    if (!library) kept.push_back(ref);
  }
  return kept;
}

AppProfile MakeProfile(std::string app_id, DeclaredSdkRaw declared,
                       std::vector<MethodRef> refs,
                       std::span<const std::string> prefixes) {
  AppProfile profile;
  profile.app_id = std::move(app_id);
  profile.declared = declared;
  profile.own_refs = FilterLibraryCalls(refs, prefixes);
  profile.all_refs = std::move(refs);
  return profile;
}

AppProfile LoadAppDescriptor(std::string_view document,
                             std::span<const std::string> prefixes) {
  json doc = json::parse(document.begin(), document.end(), nullptr,
                         /*allow_exceptions=*/false);
  if (doc.is_discarded()) Schema("not valid JSON");
  if (!doc.is_object()) Schema("top level must be an object");

  auto id = doc.find("app_id");
  if (id == doc.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
    Schema("app_id must be a non-empty string");
  }

  DeclaredSdkRaw declared;
  declared.min_raw = OptionalLevel(doc, "min");
  declared.target_raw = OptionalLevel(doc, "target");
  declared.max_raw = OptionalLevel(doc, "max");

  std::vector<MethodRef> refs;
  if (auto it = doc.find("refs"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) Schema("refs must be an array");
    refs.reserve(it->size());
    size_t i = 0;
    for (const json& ref : *it) {
      if (!ref.is_object()) Schema("refs[" + std::to_string(i) + "] must be an object");
      MethodRef m;
      m.call_site_class = ClassPath(RequiredString(ref, "call_site", i), "call_site", i);
      m.target.class_name = ClassPath(RequiredString(ref, "class", i), "class", i);
      m.target.member = RequiredString(ref, "member", i);
      m.target.descriptor = RequiredString(ref, "descriptor", i);
      refs.push_back(std::move(m));
      ++i;
    }
  }
  return MakeProfile(id->get<std::string>(), declared, std::move(refs), prefixes);
}

AppProfile IngestApk(std::string_view apk_bytes, std::string app_id,
                     std::span<const std::string> prefixes) {
  ApkContents apk = OpenApk(apk_bytes);
  DeclaredSdkRaw declared = ParseManifestBytes(apk.manifest);
  return MakeProfile(std::move(app_id), declared, ExtractMethodRefs(apk.dex_files),
                     prefixes);
}

}  // namespace sdklint
