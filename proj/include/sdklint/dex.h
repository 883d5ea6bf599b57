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

#ifndef SDKLINT_DEX_H_
#define SDKLINT_DEX_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdklint/api_types.h"

namespace sdklint {

// Every invoke-virtual/super/direct/static/interface (and /range) site in the
// file, in class_def then method then instruction order. The header checksum
// and signature are not verified; every offset is bounds-checked.
// Throws kBadMagic, kOutOfBoundsOffset or kBadInstructionStream.
std::vector<MethodRef> ExtractMethodRefs(std::string_view dex);

// Union of the above over classes.dex, classes2.dex, ... (duplicates kept).
std::vector<MethodRef> ExtractMethodRefs(std::span<const std::string> dex_files);

// Same contract, reading dexdump -d style disassembly. Throws
// kUnrecognizedFormat when the text is not disassembler output.
std::vector<MethodRef> ParseDexdumpText(std::string_view text);

}  // namespace sdklint

#endif  // SDKLINT_DEX_H_
