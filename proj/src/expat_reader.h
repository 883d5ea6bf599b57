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

#ifndef SDKLINT_SRC_EXPAT_READER_H_
#define SDKLINT_SRC_EXPAT_READER_H_

#include <expat.h>

#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sdklint::internal {

// Callback front end over expat. Exceptions thrown by the callbacks stop the
// parse and are rethrown from Parse() once control is back in C++ frames.
// With namespace processing on, element and attribute names arrive as
// "uri|local" (unprefixed names have no separator).
class ExpatReader {
 public:
  static constexpr char kNamespaceSeparator = '|';

  using StartHandler =
      std::function<void(std::string_view name, const XML_Char** attrs)>;
  using EndHandler = std::function<void(std::string_view name)>;

  explicit ExpatReader(bool namespaces);

  void OnStart(StartHandler handler) { on_start_ = std::move(handler); }
  void OnEnd(EndHandler handler) { on_end_ = std::move(handler); }

  // Returns the expat error ("line N: message") for malformed input.
  std::optional<std::string> Parse(std::string_view document);

 private:
  static void StartThunk(void* user, const XML_Char* name,
                         const XML_Char** attrs);
  static void EndThunk(void* user, const XML_Char* name);

  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser_;
  StartHandler on_start_;
  EndHandler on_end_;
  std::exception_ptr pending_;
};

// Looks up an attribute value in expat's null-terminated name/value array.
const XML_Char* FindAttribute(const XML_Char** attrs, std::string_view name);

}  // namespace sdklint::internal

#endif  // SDKLINT_SRC_EXPAT_READER_H_
