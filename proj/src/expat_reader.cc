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

#include "expat_reader.h"

#include <climits>

namespace sdklint::internal {

ExpatReader::ExpatReader(bool namespaces)
    : parser_(namespaces ? XML_ParserCreateNS("UTF-8", kNamespaceSeparator)
                         : XML_ParserCreate("UTF-8"),
              XML_ParserFree) {
  XML_SetUserData(parser_.get(), this);
  XML_SetElementHandler(parser_.get(), StartThunk, EndThunk);
}

void ExpatReader::StartThunk(void* user, const XML_Char* name,
                             const XML_Char** attrs) {
  auto* self = static_cast<ExpatReader*>(user);
  if (!self->on_start_) return;
  try {
    self->on_start_(name, attrs);
  } catch (...) {
    self->pending_ = std::current_exception();
    XML_StopParser(self->parser_.get(), XML_FALSE);
  }
}

void ExpatReader::EndThunk(void* user, const XML_Char* name) {
  auto* self = static_cast<ExpatReader*>(user);
  if (!self->on_end_) return;
  try {
    self->on_end_(name);
  } catch (...) {
    self->pending_ = std::current_exception();
    XML_StopParser(self->parser_.get(), XML_FALSE);
  }
}

std::optional<std::string> ExpatReader::Parse(std::string_view document) {
  if (document.size() > static_cast<size_t>(INT_MAX)) {
    return "document too large";
  }
  XML_Status status = XML_Parse(parser_.get(), document.data(),
                                static_cast<int>(document.size()), XML_TRUE);
  if (pending_) std::rethrow_exception(pending_);
  if (status != XML_STATUS_OK) {
    return "line " +
           std::to_string(XML_GetCurrentLineNumber(parser_.get())) + ": " +
           XML_ErrorString(XML_GetErrorCode(parser_.get()));
  }
  return std::nullopt;
}

const XML_Char* FindAttribute(const XML_Char** attrs, std::string_view name) {
  for (size_t i = 0; attrs[i] != nullptr; i += 2) {
    if (name == attrs[i]) return attrs[i + 1];
  }
  return nullptr;
}

}  // namespace sdklint::internal
