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

#ifndef SDKLINT_STORE_PAGE_H_
#define SDKLINT_STORE_PAGE_H_

#include <string>
#include <string_view>

namespace sdklint {

inline constexpr std::string_view kVariesWithDevice = "Varies with device";

// Raw attribute strings from a saved store listing. Missing labels leave the
// field empty.
struct StoreMetadata {
  std::string app_id;
  std::string size;
  std::string current_version;
  std::string requires_android;

  friend bool operator==(const StoreMetadata&, const StoreMetadata&) = default;
};

// Reads the "Size", "Current Version" and "Requires Android" rows: the page's
// visible text is tokenized at tag boundaries and each value is the first
// text token after its label. Throws kNoAttributesFound if no label occurs.
StoreMetadata ParseStorePage(std::string_view html, std::string app_id = "");

// Exact, case-sensitive "Varies with device" in any of the three fields.
bool IsMultipleApk(const StoreMetadata& meta);

}  // namespace sdklint

#endif  // SDKLINT_STORE_PAGE_H_
