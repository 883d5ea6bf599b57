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

#ifndef SDKLINT_ERROR_H_
#define SDKLINT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdklint {

enum class ErrorCode {
  kIo,
  kInvalidLevel,
  // api-versions / snapshot
  kMalformedDocument,
  kDuplicateSignature,
  kSnapshotVersionMismatch,
  kCorruptSnapshot,
  // manifest
  kMalformedManifest,
  kNonIntegerAttribute,
  kNotBinaryXml,
  kTruncatedChunk,
  kBadStringPool,
  // dex
  kBadMagic,
  kOutOfBoundsOffset,
  kBadInstructionStream,
  kUnrecognizedFormat,
  // apk
  kNotZip,
  kMissingManifest,
  kMissingDex,
  // descriptors, rules, store pages, reports
  kSchemaViolation,
  kNoAttributesFound,
  kUnsupportedFormat,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the corpus runner, the CLI) can map it to a stage or exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdklint

#endif  // SDKLINT_ERROR_H_
