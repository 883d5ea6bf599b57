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

// Reader for dexdump -d output, kept as an independent path to the same
// MethodRef multiset that the binary parser produces.

#include <optional>
#include <string>

#include "sdklint/dex.h"
#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

namespace {

using internal::StartsWith;
using internal::Trim;

constexpr std::string_view kClassLabel = "Class descriptor";

[[noreturn]] void Unrecognized(size_t line, const std::string& what) {
  throw Error(ErrorCode::kUnrecognizedFormat,
              "dexdump line " + std::to_string(line) + ": " + what);
}

// Text between the first pair of single quotes.
std::optional<std::string_view> Quoted(std::string_view line) {
  size_t open = line.find('\'');
  if (open == std::string_view::npos) return std::nullopt;
  size_t close = line.find('\'', open + 1);
  if (close == std::string_view::npos) return std::nullopt;
  return line.substr(open + 1, close - open - 1);
}

// "invoke-virtual/range" etc. Polymorphic and custom invokes are excluded,
// matching the binary path.
bool IsMethodInvoke(std::string_view mnemonic) {
  if (internal::EndsWith(mnemonic, "/range")) {
    mnemonic.remove_suffix(std::string_view("/range").size());
  }
  return mnemonic == "invoke-virtual" || mnemonic == "invoke-super" ||
         mnemonic == "invoke-direct" || mnemonic == "invoke-static" ||
         mnemonic == "invoke-interface";
}

// "Lcls;.name:(params)ret" -> signature.
std::optional<ApiSignature> ParseMethodOperand(std::string_view operand) {
  size_t colon = operand.find(":(");
  if (colon == std::string_view::npos) return std::nullopt;
  size_t dot = operand.rfind('.', colon);
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  std::string_view descriptor = Trim(operand.substr(colon + 1));
  if (descriptor.empty()) return std::nullopt;
  return ApiSignature{TypeDescriptorToInternal(operand.substr(0, dot)),
                      std::string(operand.substr(dot + 1, colon - dot - 1)),
                      std::string(descriptor)};
}

}  // namespace

std::vector<MethodRef> ParseDexdumpText(std::string_view text) {
  std::vector<MethodRef> refs;
  if (Trim(text).empty()) return refs;
  if (text.find("Opened '") == std::string_view::npos &&
      text.find(kClassLabel) == std::string_view::npos &&
      text.find("DEX file header") == std::string_view::npos) {
    Unrecognized(1, "no dexdump headers found");
  }

  std::optional<std::string> current_class;
  size_t line_no = 0;
  for (std::string_view line : internal::SplitLines(text)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (StartsWith(trimmed, kClassLabel)) {
      auto quoted = Quoted(trimmed);
      if (!quoted) Unrecognized(line_no, "class descriptor without quotes");
      current_class = TypeDescriptorToInternal(*quoted);
      continue;
    }
    // Instruction lines look like "0001f4: 6e20 ...  |0003: invoke-... ".
    size_t bar = line.find('|');
    if (bar == std::string_view::npos) continue;
    std::string_view insn = line.substr(bar + 1);
    size_t colon = insn.find(": ");
    if (colon == std::string_view::npos) continue;
    insn = Trim(insn.substr(colon + 2));
    size_t space = insn.find(' ');
    std::string_view mnemonic = insn.substr(0, space);
    if (!IsMethodInvoke(mnemonic)) continue;
    if (!current_class) Unrecognized(line_no, "invoke outside of any class");

    size_t brace = insn.find("}, ");
    if (brace == std::string_view::npos) Unrecognized(line_no, "invoke without operands");
    std::string_view operand = insn.substr(brace + 3);
    if (size_t comment = operand.find(" //"); comment != std::string_view::npos) {
      operand = operand.substr(0, comment);
    }
    auto target = ParseMethodOperand(Trim(operand));
    if (!target) Unrecognized(line_no, "bad method operand");
    refs.push_back(MethodRef{*current_class, std::move(*target)});
  }
  return refs;
}

}  // namespace sdklint
