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

#include "sdklint/manifest.h"

#include "expat_reader.h"
#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

namespace {

std::string AndroidAttr(std::string_view local) {
  std::string name(kAndroidNamespace);
  name.push_back(internal::ExpatReader::kNamespaceSeparator);
  name.append(local);
  return name;
}

}  // namespace

DeclaredSdkRaw ParseManifestXml(std::string_view xml) {
  static const std::string kMin = AndroidAttr("minSdkVersion");
  static const std::string kTarget = AndroidAttr("targetSdkVersion");
  static const std::string kMax = AndroidAttr("maxSdkVersion");

  DeclaredSdkRaw raw;
  int depth = 0;
  auto read = [](const XML_Char** attrs, const std::string& name,
                 std::string_view label) -> std::optional<int> {
    const XML_Char* value = internal::FindAttribute(attrs, name);
    if (value == nullptr) return std::nullopt;
    std::optional<int> parsed = internal::ParseInt(value);
    if (!parsed) {
      throw Error(ErrorCode::kNonIntegerAttribute,
                  std::string(label) + "=\"" + value + "\" is not an integer");
    }
    return parsed;
  };

  internal::ExpatReader reader(/*namespaces=*/true);
  reader.OnStart([&](std::string_view name, const XML_Char** attrs) {
    ++depth;
    if (depth == 1 && name != "manifest") {
      throw Error(ErrorCode::kMalformedManifest,
                  "root element is <" + std::string(name) + ">, not <manifest>");
    }
    if (depth != 2 || name != "uses-sdk") return;
    if (auto min = read(attrs, kMin, "minSdkVersion")) {
      if (raw.min_raw) {
        ++raw.duplicate_min_count;
      } else {
        raw.min_raw = min;
      }
    }
    if (auto target = read(attrs, kTarget, "targetSdkVersion");
        target && !raw.target_raw) {
      raw.target_raw = target;
    }
    if (auto max = read(attrs, kMax, "maxSdkVersion"); max && !raw.max_raw) {
      raw.max_raw = max;
    }
  });
  reader.OnEnd([&](std::string_view) { --depth; });

  if (auto error = reader.Parse(xml)) {
    throw Error(ErrorCode::kMalformedManifest, "manifest: " + *error);
  }
  return raw;
}

DeclaredSdkRaw ParseManifestBytes(std::string_view bytes) {
  if (IsBinaryXml(bytes)) return ParseManifestXml(DecodeBinaryAxml(bytes));
  return ParseManifestXml(bytes);
}

}  // namespace sdklint
