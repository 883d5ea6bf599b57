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

#ifndef SDKLINT_MANIFEST_H_
#define SDKLINT_MANIFEST_H_

#include <optional>
#include <string>
#include <string_view>

namespace sdklint {

inline constexpr std::string_view kAndroidNamespace =
    "http://schemas.android.com/apk/res/android";

// The <uses-sdk> attributes exactly as written; no defaults applied.
struct DeclaredSdkRaw {
  std::optional<int> min_raw;
  std::optional<int> target_raw;
  std::optional<int> max_raw;
  // minSdkVersion occurrences after the first one.
  int duplicate_min_count = 0;

  friend bool operator==(const DeclaredSdkRaw&, const DeclaredSdkRaw&) = default;
};

// Reads android:minSdkVersion / targetSdkVersion / maxSdkVersion from every
// <uses-sdk> child of <manifest>, first occurrence in document order winning.
// Throws kMalformedManifest or kNonIntegerAttribute.
DeclaredSdkRaw ParseManifestXml(std::string_view xml);

// True if the bytes start with a binary XML (RES_XML_TYPE) chunk header.
bool IsBinaryXml(std::string_view bytes);

// Decodes an Android binary XML document (string pool, resource map, element
// chunks) back to plain XML text. Integer attributes come out as decimal.
// Throws kNotBinaryXml, kTruncatedChunk or kBadStringPool.
std::string DecodeBinaryAxml(std::string_view bytes);

// Binary or plain manifest bytes, as found in an APK or on disk.
DeclaredSdkRaw ParseManifestBytes(std::string_view bytes);

}  // namespace sdklint

#endif  // SDKLINT_MANIFEST_H_
