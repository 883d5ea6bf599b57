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

#ifndef SDKLINT_APP_PROFILE_H_
#define SDKLINT_APP_PROFILE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdklint/api_types.h"
#include "sdklint/manifest.h"

namespace sdklint {

// Call-site prefixes treated as library code unless the caller overrides them.
const std::vector<std::string>& DefaultLibraryPrefixes();

// Drops every ref whose call-site class starts with one of `prefixes`. The
// target class is never consulted.
std::vector<MethodRef> FilterLibraryCalls(std::span<const MethodRef> refs,
                                          std::span<const std::string> prefixes);

struct AppProfile {
  std::string app_id;
  DeclaredSdkRaw declared;
  std::vector<MethodRef> all_refs;  // multiset, extraction order
  std::vector<MethodRef> own_refs;  // all_refs minus library call sites
  size_t unresolved_count = 0;      // filled in by the analyzer
};

AppProfile MakeProfile(std::string app_id, DeclaredSdkRaw declared,
                       std::vector<MethodRef> refs,
                       std::span<const std::string> prefixes);

// JSON descriptor:
//   {"app_id": "...", "min": 19, "target": null, "max": null,
//    "refs": [{"call_site": "...", "class": "...", "member": "...",
//              "descriptor": "..."}]}
// min/target/max may be null or missing; refs may be missing.
// Throws kSchemaViolation.
AppProfile LoadAppDescriptor(std::string_view document,
                             std::span<const std::string> prefixes);

// Whole-APK path: container, manifest (binary or plain) and every dex file.
AppProfile IngestApk(std::string_view apk_bytes, std::string app_id,
                     std::span<const std::string> prefixes);

}  // namespace sdklint

#endif  // SDKLINT_APP_PROFILE_H_
