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

#include "sdklint/store_page.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

void AppendCodepoint(std::string& out, unsigned long cp) {
  if (cp == 0xA0) cp = ' ';
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x110000) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes the handful of entities store pages use; unknown ones stay as is.
std::string DecodeEntities(std::string_view text) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    size_t semi = text.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    std::string_view name = text.substr(i + 1, semi - i - 1);
    std::optional<unsigned long> cp;
    if (name == "amp") cp = '&';
    else if (name == "lt") cp = '<';
    else if (name == "gt") cp = '>';
    else if (name == "quot") cp = '"';
    else if (name == "apos") cp = '\'';
    else if (name == "nbsp") cp = ' ';
    else if (name.size() > 1 && name[0] == '#') {
      bool hex = name[1] == 'x' || name[1] == 'X';
      std::string digits(name.substr(hex ? 2 : 1));
      if (!digits.empty() && digits.size() <= 8 &&
          digits.find_first_not_of(hex ? "0123456789abcdefABCDEF" : "0123456789") ==
              std::string::npos) {
        cp = std::stoul(digits, nullptr, hex ? 16 : 10);
      }
    }
    if (!cp) {
      out.push_back('&');
      continue;
    }
    AppendCodepoint(out, *cp);
    i = semi;
  }
  return out;
}

std::string CollapseSpace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (internal::IsSpace(c)) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

// Visible text runs between tags, skipping comments, script and style.
std::vector<std::string> TextTokens(std::string_view html) {
  std::vector<std::string> tokens;
  std::string lower = Lower(html);
  size_t i = 0;
  auto flush = [&](size_t from, size_t to) {
    std::string token = CollapseSpace(DecodeEntities(html.substr(from, to - from)));
    if (!token.empty()) tokens.push_back(std::move(token));
  };
  while (i < html.size()) {
    size_t lt = html.find('<', i);
    if (lt == std::string_view::npos) {
      flush(i, html.size());
      break;
    }
    flush(i, lt);
    if (html.substr(lt, 4) == "<!--") {
      size_t end = html.find("-->", lt + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    size_t gt = html.find('>', lt);
    if (gt == std::string_view::npos) break;
    i = gt + 1;
    for (std::string_view raw : {"script", "style"}) {
      std::string open = "<" + std::string(raw);
      if (lower.compare(lt, open.size(), open) == 0 &&
          (lt + open.size() == gt || !std::isalnum(static_cast<unsigned char>(
                                         lower[lt + open.size()])))) {
        size_t close = lower.find("</" + std::string(raw), gt);
        size_t close_gt =
            close == std::string::npos ? std::string::npos : lower.find('>', close);
        i = close_gt == std::string::npos ? html.size() : close_gt + 1;
        break;
      }
    }
  }
  return tokens;
}

std::string_view StripColon(std::string_view label) {
  label = internal::Trim(label);
  if (!label.empty() && label.back() == ':') label.remove_suffix(1);
  return internal::Trim(label);
}

}  // namespace

StoreMetadata ParseStorePage(std::string_view html, std::string app_id) {
  StoreMetadata meta;
  meta.app_id = std::move(app_id);
  std::vector<std::string> tokens = TextTokens(html);
  struct Slot {
    std::string_view label;
    std::string* field;
    bool found = false;
  };
  Slot slots[] = {{"Size", &meta.size},
                  {"Current Version", &meta.current_version},
                  {"Requires Android", &meta.requires_android}};
  bool any = false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    for (Slot& slot : slots) {
      if (slot.found || StripColon(tokens[i]) != slot.label) continue;
      slot.found = true;
      any = true;
      if (i + 1 < tokens.size()) *slot.field = tokens[i + 1];
    }
  }
  if (!any) {
    throw Error(ErrorCode::kNoAttributesFound,
                "store page has none of Size / Current Version / Requires Android");
  }
  return meta;
}

bool IsMultipleApk(const StoreMetadata& meta) {
  return meta.size == kVariesWithDevice || meta.current_version == kVariesWithDevice ||
         meta.requires_android == kVariesWithDevice;
}

}  // namespace sdklint
