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

#include "sdklint/api_types.h"

#include <algorithm>
#include <functional>

#include "sdklint/error.h"

namespace sdklint {

namespace {

constexpr std::string_view kMemberSeparator = ";->";

bool HasWhitespace(std::string_view text) {
  return std::any_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

}  // namespace

ApiLevel::ApiLevel(int value) : value_(value) {
  if (value < kMin || value > kMax) {
    throw Error(ErrorCode::kInvalidLevel,
                "API level out of range: " + std::to_string(value));
  }
}

std::string ApiSignature::ToString() const {
  if (member.empty() && descriptor.empty()) {
    return class_name;
  }
  std::string out;
  out.reserve(class_name.size() + member.size() + descriptor.size() + 3);
  out.append(class_name).append(kMemberSeparator).append(member).append(
      descriptor);
  return out;
}

std::optional<ApiSignature> ApiSignature::Parse(std::string_view text) {
  if (text.empty() || HasWhitespace(text)) {
    return std::nullopt;
  }
  ApiSignature sig;
  size_t sep = text.find(kMemberSeparator);
  if (sep == std::string_view::npos) {
    sig.class_name = std::string(text);
    return IsValidClassPath(sig.class_name) ? std::optional(sig)
                                            : std::nullopt;
  }
  sig.class_name = std::string(text.substr(0, sep));
  std::string_view rest = text.substr(sep + kMemberSeparator.size());
  size_t paren = rest.find('(');
  if (paren == std::string_view::npos) {
    sig.member = std::string(rest);
  } else {
    sig.member = std::string(rest.substr(0, paren));
    sig.descriptor = std::string(rest.substr(paren));
  }
  if (!IsValidClassPath(sig.class_name) || sig.member.empty()) {
    return std::nullopt;
  }
  return sig;
}

size_t ApiSignatureHash::operator()(const ApiSignature& sig) const {
  std::hash<std::string> h;
  size_t seed = h(sig.class_name);
  seed ^= h(sig.member) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  seed ^= h(sig.descriptor) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

bool ApiLifetime::IsOrdered() const {
  if (deprecated && added > *deprecated) return false;
  if (removed && added >= *removed) return false;
  if (deprecated && removed && *deprecated > *removed) return false;
  return true;
}

bool ApiLifetime::AvailableAt(int level) const {
  return added.value() <= level && (!removed || level < removed->value());
}

std::string TypeDescriptorToInternal(std::string_view descriptor) {
  if (descriptor.size() >= 2 && descriptor.front() == 'L' &&
      descriptor.back() == ';') {
    return std::string(descriptor.substr(1, descriptor.size() - 2));
  }
  return std::string(descriptor);
}

bool IsValidClassPath(std::string_view path) {
  return !path.empty() && !HasWhitespace(path);
}

}  // namespace sdklint
