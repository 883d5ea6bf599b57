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

#include "sdklint/apk.h"

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>

#include "sdklint/error.h"
#include "text_util.h"

namespace sdklint {

namespace {

constexpr uint32_t kEndOfCentralDir = 0x06054b50;
constexpr uint32_t kCentralEntry = 0x02014b50;
constexpr uint32_t kLocalHeader = 0x04034b50;
constexpr size_t kEocdSize = 22;

[[noreturn]] void NotZip(const std::string& what) {
  throw Error(ErrorCode::kNotZip, "zip: " + what);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : b_(bytes) {}

  uint16_t U16(size_t at) const {
    Need(at, 2);
    uint16_t v;
    std::memcpy(&v, b_.data() + at, 2);
    return v;
  }
  uint32_t U32(size_t at) const {
    Need(at, 4);
    uint32_t v;
    std::memcpy(&v, b_.data() + at, 4);
    return v;
  }
  std::string_view Slice(size_t at, size_t n) const {
    Need(at, n);
    return b_.substr(at, n);
  }
  void Need(size_t at, size_t n) const {
    if (at > b_.size() || n > b_.size() - at) NotZip("structure runs past end of file");
  }
  size_t size() const { return b_.size(); }

 private:
  std::string_view b_;
};

struct Entry {
  uint16_t method = 0;
  uint32_t crc = 0;
  uint32_t compressed = 0;
  uint32_t uncompressed = 0;
  uint32_t local_offset = 0;
};

size_t FindEndOfCentralDir(const Reader& r) {
  if (r.size() < kEocdSize) NotZip("too short");
  size_t lowest = r.size() > kEocdSize + 0xffff ? r.size() - kEocdSize - 0xffff : 0;
  for (size_t at = r.size() - kEocdSize + 1; at-- > lowest;) {
    if (r.U32(at) == kEndOfCentralDir) return at;
  }
  NotZip("no end-of-central-directory record");
}

std::string Inflate(std::string_view name, const Entry& e, std::string_view data) {
  std::string out;
  if (e.method == 0) {
    out.assign(data);
  } else if (e.method == 8) {
    out.resize(e.uncompressed);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) NotZip("inflate init failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    size_t produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != e.uncompressed) {
      NotZip("corrupt deflate data in " + std::string(name));
    }
  } else {
    NotZip("unsupported compression method " + std::to_string(e.method) +
           " for " + std::string(name));
  }
  if (out.size() != e.uncompressed) NotZip("size mismatch in " + std::string(name));
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(out.data()),
              static_cast<uInt>(out.size()));
  if (crc != e.crc) NotZip("crc mismatch in " + std::string(name));
  return out;
}

// 0 for classes.dex, N for classesN.dex (N >= 2), nullopt otherwise.
std::optional<int> DexOrdinal(std::string_view name) {
  if (!internal::StartsWith(name, "classes") || !internal::EndsWith(name, ".dex")) {
    return std::nullopt;
  }
  std::string_view middle = name.substr(7, name.size() - 11);
  if (middle.empty()) return 0;
  if (middle.front() == '0' || middle.front() == '+') return std::nullopt;
  auto n = internal::ParseInt(middle);
  if (!n || *n < 2 || middle.find_first_not_of("0123456789") != std::string_view::npos) {
    return std::nullopt;
  }
  return n;
}

}  // namespace

ApkContents OpenApk(std::string_view zip) {
  Reader r(zip);
  if (r.size() < 4 || (r.U32(0) != kLocalHeader && r.U32(0) != kEndOfCentralDir)) {
    NotZip("missing local file header signature");
  }
  size_t eocd = FindEndOfCentralDir(r);
  uint16_t count = r.U16(eocd + 10);
  uint32_t cd_offset = r.U32(eocd + 16);
  if (cd_offset == 0xffffffff || count == 0xffff) NotZip("zip64 archives are not supported");

  std::optional<Entry> manifest;
  std::map<int, std::pair<std::string, Entry>> dex;
  size_t at = cd_offset;
  for (uint16_t i = 0; i < count; ++i) {
    if (r.U32(at) != kCentralEntry) NotZip("bad central directory entry");
    Entry e;
    e.method = r.U16(at + 10);
    e.crc = r.U32(at + 16);
    e.compressed = r.U32(at + 20);
    e.uncompressed = r.U32(at + 24);
    uint16_t name_len = r.U16(at + 28);
    uint16_t extra_len = r.U16(at + 30);
    uint16_t comment_len = r.U16(at + 32);
    e.local_offset = r.U32(at + 42);
    std::string name(r.Slice(at + 46, name_len));
    at += 46 + size_t{name_len} + extra_len + comment_len;

    // Duplicate names: the first central directory entry wins.
    if (name == "AndroidManifest.xml") {
      if (!manifest) manifest = e;
    } else if (auto ordinal = DexOrdinal(name)) {
      dex.try_emplace(*ordinal, name, e);
    }
  }

  auto read = [&r](std::string_view name, const Entry& e) {
    if (r.U32(e.local_offset) != kLocalHeader) {
      NotZip("bad local header for " + std::string(name));
    }
    size_t data = e.local_offset + 30 + size_t{r.U16(e.local_offset + 26)} +
                  r.U16(e.local_offset + 28);
    return Inflate(name, e, r.Slice(data, e.compressed));
  };

  if (!manifest) {
    throw Error(ErrorCode::kMissingManifest, "apk has no AndroidManifest.xml");
  }
  if (!dex.contains(0)) throw Error(ErrorCode::kMissingDex, "apk has no classes.dex");

  ApkContents contents;
  contents.manifest = read("AndroidManifest.xml", *manifest);
  for (const auto& [ordinal, named] : dex) {
    contents.dex_files.push_back(read(named.first, named.second));
  }
  return contents;
}

}  // namespace sdklint
