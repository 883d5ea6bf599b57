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

// Binary XML decoding. Only what a manifest needs: string pool, resource map,
// namespace and element chunks. CDATA and unknown chunks are skipped.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdklint/error.h"
#include "sdklint/manifest.h"

namespace sdklint {

namespace {

constexpr uint16_t kResXmlType = 0x0003;
constexpr uint16_t kStringPoolType = 0x0001;
constexpr uint16_t kStartNamespace = 0x0100;
constexpr uint16_t kEndNamespace = 0x0101;
constexpr uint16_t kStartElement = 0x0102;
constexpr uint16_t kEndElement = 0x0103;
constexpr uint16_t kResourceMap = 0x0180;
constexpr uint32_t kNoIndex = 0xFFFFFFFF;
constexpr uint32_t kUtf8Flag = 0x100;

constexpr uint8_t kTypeReference = 0x01;
constexpr uint8_t kTypeString = 0x03;
constexpr uint8_t kTypeIntDec = 0x10;
constexpr uint8_t kTypeIntHex = 0x11;
constexpr uint8_t kTypeIntBoolean = 0x12;

// Framework attribute ids, used when the pool names are blank or mangled.
const std::map<uint32_t, std::string>& KnownAttributeIds() {
  static const auto* ids = new std::map<uint32_t, std::string>{
      {0x01010003, "name"},
      {0x0101020c, "minSdkVersion"},
      {0x0101021b, "versionCode"},
      {0x0101021c, "versionName"},
      {0x01010270, "targetSdkVersion"},
      {0x01010271, "maxSdkVersion"},
  };
  return *ids;
}

class Cursor {
 public:
  explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

  uint16_t U16(size_t at) const {
    Need(at, 2);
    uint16_t v;
    std::memcpy(&v, bytes_.data() + at, 2);
    return v;
  }
  uint32_t U32(size_t at) const {
    Need(at, 4);
    uint32_t v;
    std::memcpy(&v, bytes_.data() + at, 4);
    return v;
  }
  uint8_t U8(size_t at) const {
    Need(at, 1);
    return static_cast<uint8_t>(bytes_[at]);
  }
  size_t size() const { return bytes_.size(); }

  void Need(size_t at, size_t n) const {
    if (at > bytes_.size() || n > bytes_.size() - at) {
      throw Error(ErrorCode::kTruncatedChunk,
                  "binary xml: read of " + std::to_string(n) + " bytes at " +
                      std::to_string(at) + " runs past the end");
    }
  }

 private:
  std::string_view bytes_;
};

void AppendUtf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::vector<std::string> ReadStringPool(const Cursor& c, size_t chunk,
                                        size_t chunk_size) {
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::kBadStringPool, "string pool: " + what);
  };
  uint16_t header_size = c.U16(chunk + 2);
  uint32_t count = c.U32(chunk + 8);
  uint32_t flags = c.U32(chunk + 16);
  uint32_t strings_start = c.U32(chunk + 20);
  if (header_size < 28 || strings_start > chunk_size ||
      count > (chunk_size - header_size) / 4) {
    throw bad("header fields out of range");
  }
  const bool utf8 = flags & kUtf8Flag;
  const size_t data = chunk + strings_start;
  const size_t end = chunk + chunk_size;

  std::vector<std::string> strings;
  strings.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    size_t at = data + c.U32(chunk + header_size + 4 * i);
    if (at >= end) throw bad("offset of string " + std::to_string(i));
    std::string s;
    if (utf8) {
      auto varlen = [&](size_t& p) {
        uint32_t n = c.U8(p++);
        if (n & 0x80) n = ((n & 0x7F) << 8) | c.U8(p++);
        return n;
      };
      varlen(at);  // length in characters, unused
      uint32_t bytes = varlen(at);
      if (at + bytes > end) throw bad("string " + std::to_string(i) + " overflows");
      c.Need(at, bytes);
      for (uint32_t k = 0; k < bytes; ++k) s.push_back(static_cast<char>(c.U8(at + k)));
    } else {
      uint32_t units = c.U16(at);
      at += 2;
      if (units & 0x8000) {
        units = ((units & 0x7FFF) << 16) | c.U16(at);
        at += 2;
      }
      if (at + 2 * size_t{units} > end) {
        throw bad("string " + std::to_string(i) + " overflows");
      }
      for (uint32_t k = 0; k < units; ++k) {
        uint32_t unit = c.U16(at + 2 * k);
        if (unit >= 0xD800 && unit < 0xDC00 && k + 1 < units) {
          uint32_t low = c.U16(at + 2 * (k + 1));
          if (low >= 0xDC00 && low < 0xE000) {
            AppendUtf8(s, 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00));
            ++k;
            continue;
          }
        }
        AppendUtf8(s, unit);
      }
    }
    strings.push_back(std::move(s));
  }
  return strings;
}

void AppendEscaped(std::string& out, std::string_view text) {
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default:
        // Control characters are not representable in XML 1.0.
        if (static_cast<unsigned char>(ch) < 0x20 && ch != '\t' && ch != '\n' &&
            ch != '\r') {
          out += ' ';
        } else {
          out.push_back(ch);
        }
    }
  }
}

bool IsXmlName(std::string_view name) {
  if (name.empty()) return false;
  for (size_t i = 0; i < name.size(); ++i) {
    unsigned char ch = name[i];
    bool alpha = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                 ch == '_' || ch >= 0x80;
    bool rest = (ch >= '0' && ch <= '9') || ch == '-' || ch == '.';
    if (!(alpha || (i > 0 && rest))) return false;
  }
  return true;
}

class Decoder {
 public:
  explicit Decoder(std::string_view bytes) : c_(bytes) {}

  std::string Run() {
    if (c_.size() < 8 || c_.U16(0) != kResXmlType) {
      throw Error(ErrorCode::kNotBinaryXml, "not a binary xml document");
    }
    uint32_t total = c_.U32(4);
    if (total > c_.size()) {
      throw Error(ErrorCode::kTruncatedChunk,
                  "binary xml: document claims " + std::to_string(total) +
                      " bytes, have " + std::to_string(c_.size()));
    }
    size_t at = c_.U16(2);
    while (at + 8 <= total) {
      uint16_t type = c_.U16(at);
      uint16_t header_size = c_.U16(at + 2);
      uint32_t size = c_.U32(at + 4);
      if (size < 8 || header_size > size || size > total - at) {
        throw Error(ErrorCode::kTruncatedChunk,
                    "binary xml: chunk at " + std::to_string(at) +
                        " has bad size " + std::to_string(size));
      }
      Chunk(type, at, header_size, size);
      at += size;
    }
    while (!open_.empty()) {
      out_ += "</" + open_.back() + ">";
      open_.pop_back();
    }
    if (!saw_element_) {
      throw Error(ErrorCode::kNotBinaryXml, "binary xml: no elements");
    }
    return out_;
  }

 private:
  const std::string& Str(uint32_t index) const {
    if (index >= strings_.size()) {
      throw Error(ErrorCode::kBadStringPool,
                  "string index " + std::to_string(index) + " out of range");
    }
    return strings_[index];
  }

  std::string AttributeName(uint32_t name_index) const {
    const auto& known = KnownAttributeIds();
    if (name_index < resource_ids_.size()) {
      auto it = known.find(resource_ids_[name_index]);
      if (it != known.end()) return it->second;
    }
    const std::string& name = Str(name_index);
    if (IsXmlName(name) && name.find(':') == std::string::npos) return name;
    return "attr" + std::to_string(name_index);
  }

  void Chunk(uint16_t type, size_t at, uint16_t header_size, uint32_t size) {
    switch (type) {
      case kStringPoolType:
        if (strings_.empty()) strings_ = ReadStringPool(c_, at, size);
        break;
      case kResourceMap:
        for (size_t p = at + header_size; p + 4 <= at + size; p += 4) {
          resource_ids_.push_back(c_.U32(p));
        }
        break;
      case kStartNamespace:
      case kEndNamespace:
        // Namespaces are re-declared per element on output.
        break;
      case kStartElement:
        StartElement(at + header_size, at + size);
        break;
      case kEndElement:
        if (!open_.empty()) {
          out_ += "</" + open_.back() + ">";
          open_.pop_back();
        }
        break;
      default:
        break;
    }
  }

  void StartElement(size_t ext, size_t end) {
    c_.Need(ext, 20);
    uint32_t ns = c_.U32(ext);
    std::string name = Str(c_.U32(ext + 4));
    uint16_t attr_start = c_.U16(ext + 8);
    uint16_t attr_size = c_.U16(ext + 10);
    uint16_t attr_count = c_.U16(ext + 12);
    if (!IsXmlName(name)) name = "element";
    if (attr_size < 20 && attr_count > 0) {
      throw Error(ErrorCode::kTruncatedChunk, "binary xml: attribute size too small");
    }
    if (ext + attr_start + size_t{attr_size} * attr_count > end) {
      throw Error(ErrorCode::kTruncatedChunk, "binary xml: attributes overflow element");
    }

    std::map<std::string, std::string> prefixes;  // uri -> prefix
    auto prefix_for = [&](const std::string& uri) {
      auto [it, fresh] = prefixes.emplace(uri, "");
      if (fresh) it->second = "n" + std::to_string(prefixes.size() - 1);
      return it->second;
    };

    std::string tag = name;
    if (ns != kNoIndex && !Str(ns).empty()) tag = prefix_for(Str(ns)) + ":" + name;

    std::string attrs;
    std::set<std::string> seen;
    for (uint16_t i = 0; i < attr_count; ++i) {
      size_t a = ext + attr_start + size_t{attr_size} * i;
      uint32_t attr_ns = c_.U32(a);
      std::string attr_name = AttributeName(c_.U32(a + 4));
      uint32_t raw = c_.U32(a + 8);
      uint8_t data_type = c_.U8(a + 15);
      uint32_t data = c_.U32(a + 16);
      if (attr_ns != kNoIndex && !Str(attr_ns).empty()) {
        attr_name = prefix_for(Str(attr_ns)) + ":" + attr_name;
      }
      if (!seen.insert(attr_name).second) continue;

      std::string value;
      if (data_type == kTypeString) {
        value = Str(raw != kNoIndex ? raw : data);
      } else if (data_type == kTypeIntDec || data_type == kTypeIntHex) {
        value = std::to_string(static_cast<int32_t>(data));
      } else if (data_type == kTypeIntBoolean) {
        value = data != 0 ? "true" : "false";
      } else if (data_type == kTypeReference) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "@0x%08x", data);
        value = buf;
      } else if (raw != kNoIndex) {
        value = Str(raw);
      } else {
        value = std::to_string(data);
      }
      attrs += " " + attr_name + "=\"";
      AppendEscaped(attrs, value);
      attrs += "\"";
    }

    out_ += "<" + tag;
    for (const auto& [uri, prefix] : prefixes) {
      out_ += " xmlns:" + prefix + "=\"";
      AppendEscaped(out_, uri);
      out_ += "\"";
    }
    out_ += attrs + ">";
    open_.push_back(tag);
    saw_element_ = true;
  }

  Cursor c_;
  std::vector<std::string> strings_;
  std::vector<uint32_t> resource_ids_;
  std::vector<std::string> open_;
  std::string out_;
  bool saw_element_ = false;
};

}  // namespace

bool IsBinaryXml(std::string_view bytes) {
  return bytes.size() >= 8 && bytes[0] == 0x03 && bytes[1] == 0x00 &&
         bytes[2] == 0x08 && bytes[3] == 0x00;
}

std::string DecodeBinaryAxml(std::string_view bytes) {
  return Decoder(bytes).Run();
}

}  // namespace sdklint
