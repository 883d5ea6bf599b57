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

#include "sdklint/error.h"

namespace sdklint {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidLevel: return "InvalidLevel";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kDuplicateSignature: return "DuplicateSignature";
    case ErrorCode::kSnapshotVersionMismatch: return "SnapshotVersionMismatch";
    case ErrorCode::kCorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kNonIntegerAttribute: return "NonIntegerAttribute";
    case ErrorCode::kNotBinaryXml: return "NotBinaryXml";
    case ErrorCode::kTruncatedChunk: return "TruncatedChunk";
    case ErrorCode::kBadStringPool: return "BadStringPool";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kOutOfBoundsOffset: return "OutOfBoundsOffset";
    case ErrorCode::kBadInstructionStream: return "BadInstructionStream";
    case ErrorCode::kUnrecognizedFormat: return "UnrecognizedFormat";
    case ErrorCode::kNotZip: return "NotZip";
    case ErrorCode::kMissingManifest: return "MissingManifest";
    case ErrorCode::kMissingDex: return "MissingDex";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kNoAttributesFound: return "NoAttributesFound";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

}  // namespace sdklint
