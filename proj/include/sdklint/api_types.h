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

#ifndef SDKLINT_API_TYPES_H_
#define SDKLINT_API_TYPES_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sdklint {

// A platform API level. Always within [kMin, kMax]; construction outside that
// range throws Error(kInvalidLevel).
class ApiLevel {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 10000;

  explicit ApiLevel(int value);

  int value() const { return value_; }

  friend auto operator<=>(const ApiLevel&, const ApiLevel&) = default;

 private:
  int value_;
};

// Framework API identity in JVM internal form: slash-separated class path,
// member name (empty for class entries) and descriptor (empty for fields and
// classes), e.g. android/webkit/WebView / addJavascriptInterface /
// (Ljava/lang/Object;Ljava/lang/String;)V.
struct ApiSignature {
  std::string class_name;
  std::string member;
  std::string descriptor;

  // class;->member(descriptor), or just the class for class entries.
  std::string ToString() const;

  // Inverse of ToString(). Returns nullopt when the text has no class part or
  // contains whitespace.
  static std::optional<ApiSignature> Parse(std::string_view text);

  friend auto operator<=>(const ApiSignature&, const ApiSignature&) = default;
  friend bool operator==(const ApiSignature&, const ApiSignature&) = default;
};

struct ApiSignatureHash {
  size_t operator()(const ApiSignature& sig) const;
};

struct ApiLifetime {
  ApiSignature signature;
  ApiLevel added{1};
  std::optional<ApiLevel> deprecated;
  std::optional<ApiLevel> removed;

  // added <= deprecated, added < removed, deprecated <= removed.
  bool IsOrdered() const;

  // Present at `level`: added <= level and not yet removed.
  bool AvailableAt(int level) const;

  friend bool operator==(const ApiLifetime&, const ApiLifetime&) = default;
};

// One invoke site: the class whose code contains the instruction, and the
// method it resolves to.
struct MethodRef {
  std::string call_site_class;
  ApiSignature target;

  friend auto operator<=>(const MethodRef&, const MethodRef&) = default;
  friend bool operator==(const MethodRef&, const MethodRef&) = default;
};

// "Landroid/view/View;" -> "android/view/View". Primitive and array
// descriptors are returned unchanged.
std::string TypeDescriptorToInternal(std::string_view descriptor);

// Class paths must be non-empty and whitespace free.
bool IsValidClassPath(std::string_view path);

}  // namespace sdklint

#endif  // SDKLINT_API_TYPES_H_
