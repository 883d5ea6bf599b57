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

#include "sdklint/dex.h"

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>

#include "sdklint/error.h"

namespace sdklint {

namespace {

constexpr size_t kHeaderSize = 0x70;

// Code units per opcode, from the Dalvik instruction formats. Unused opcodes
// are treated as one unit (format 10x) like the platform verifier's table.
constexpr std::array<uint8_t, 256> BuildWidths() {
  std::array<uint8_t, 256> w{};
  for (auto& x : w) x = 1;
  auto set = [&w](int lo, int hi, uint8_t units) {
    for (int op = lo; op <= hi; ++op) w[op] = units;
  };
  for (int op : {0x02, 0x05, 0x08, 0x13, 0x15, 0x16, 0x19, 0x1a, 0x1c, 0x1f,
                 0x20, 0x22, 0x23, 0x29, 0xfe, 0xff}) {
    w[op] = 2;
  }
  set(0x2d, 0x3d, 2);
  set(0x44, 0x6d, 2);
  set(0x90, 0xaf, 2);
  set(0xd0, 0xe2, 2);
  for (int op : {0x03, 0x06, 0x09, 0x14, 0x17, 0x1b, 0xfc, 0xfd}) w[op] = 3;
  set(0x24, 0x26, 3);
  set(0x2a, 0x2c, 3);
  set(0x6e, 0x72, 3);
  set(0x74, 0x78, 3);
  w[0x18] = 5;
  w[0xfa] = 4;
  w[0xfb] = 4;
  return w;
}

constexpr std::array<uint8_t, 256> kWidths = BuildWidths();

bool IsInvoke(uint8_t op) {
  return (op >= 0x6e && op <= 0x72) || (op >= 0x74 && op <= 0x78);
}

class DexFile {
 public:
  explicit DexFile(std::string_view bytes) : b_(bytes) {
    if (b_.size() < 8 || std::memcmp(b_.data(), "dex\n", 4) != 0 ||
        b_[7] != '\0' || !IsDigit(b_[4]) || !IsDigit(b_[5]) || !IsDigit(b_[6])) {
      throw Error(ErrorCode::kBadMagic, "dex: bad magic");
    }
    if (b_.size() < kHeaderSize) {
      throw Error(ErrorCode::kOutOfBoundsOffset, "dex: truncated header");
    }
    string_ids_ = Section(56, 4, "string_ids");
    type_ids_ = Section(64, 4, "type_ids");
    proto_ids_ = Section(72, 12, "proto_ids");
    method_ids_ = Section(88, 8, "method_ids");
    class_defs_ = Section(96, 32, "class_defs");
    type_cache_.resize(type_ids_.count);
    method_cache_.resize(method_ids_.count);
  }

  void Collect(std::vector<MethodRef>& out) {
    for (uint32_t i = 0; i < class_defs_.count; ++i) {
      size_t def = class_defs_.offset + 32 * size_t{i};
      const std::string& call_site = Type(U32(def));
      uint32_t data_off = U32(def + 24);
      if (data_off == 0) continue;
      size_t at = data_off;
      uint32_t static_fields = Uleb(at);
      uint32_t instance_fields = Uleb(at);
      uint32_t direct = Uleb(at);
      uint32_t virt = Uleb(at);
      for (uint64_t f = 0; f < uint64_t{static_fields} + instance_fields; ++f) {
        Uleb(at);
        Uleb(at);
      }
      for (uint32_t group : {direct, virt}) {
        for (uint32_t m = 0; m < group; ++m) {
          Uleb(at);  // method index diff; the invoked ids are what matter
          Uleb(at);
          uint32_t code_off = Uleb(at);
          if (code_off != 0) ScanCode(code_off, call_site, out);
        }
      }
    }
  }

 private:
  struct Range {
    uint32_t count = 0;
    uint32_t offset = 0;
  };

  static bool IsDigit(char c) { return c >= '0' && c <= '9'; }

  [[noreturn]] void OutOfBounds(const std::string& what) const {
    throw Error(ErrorCode::kOutOfBoundsOffset, "dex: " + what + " out of bounds");
  }

  void Need(size_t at, size_t n, const char* what = "read") const {
    if (at > b_.size() || n > b_.size() - at) OutOfBounds(what);
  }

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

  uint32_t Uleb(size_t& at) const {
    uint32_t result = 0;
    for (int shift = 0; shift < 35; shift += 7) {
      Need(at, 1, "uleb128");
      uint8_t byte = static_cast<uint8_t>(b_[at++]);
      result |= static_cast<uint32_t>(byte & 0x7f) << shift;
      if ((byte & 0x80) == 0) return result;
    }
    OutOfBounds("uleb128 (overlong)");
  }

  Range Section(size_t header_field, size_t item_size, const char* name) const {
    Range r{U32(header_field), U32(header_field + 4)};
    if (r.count != 0) Need(r.offset, item_size * r.count, name);
    return r;
  }

  std::string String(uint32_t idx) const {
    if (idx >= string_ids_.count) OutOfBounds("string index");
    size_t at = U32(string_ids_.offset + 4 * size_t{idx});
    Uleb(at);  // utf16 length
    size_t end = at;
    while (true) {
      Need(end, 1, "string data");
      if (b_[end] == '\0') break;
      ++end;
    }
    return std::string(b_.substr(at, end - at));
  }

  const std::string& Type(uint32_t idx) {
    if (idx >= type_ids_.count) OutOfBounds("type index");
    auto& slot = type_cache_[idx];
    if (!slot) {
      slot = TypeDescriptorToInternal(
          String(U32(type_ids_.offset + 4 * size_t{idx})));
    }
    return *slot;
  }

  std::string RawType(uint32_t idx) const {
    if (idx >= type_ids_.count) OutOfBounds("type index");
    return String(U32(type_ids_.offset + 4 * size_t{idx}));
  }

  const ApiSignature& Method(uint32_t idx) {
    if (idx >= method_ids_.count) OutOfBounds("method index");
    auto& slot = method_cache_[idx];
    if (slot) return *slot;
    size_t at = method_ids_.offset + 8 * size_t{idx};
    uint16_t class_idx = U16(at);
    uint16_t proto_idx = U16(at + 2);
    uint32_t name_idx = U32(at + 4);
    if (proto_idx >= proto_ids_.count) OutOfBounds("proto index");
    size_t proto = proto_ids_.offset + 12 * size_t{proto_idx};
    std::string descriptor = "(";
    if (uint32_t params = U32(proto + 8); params != 0) {
      uint32_t n = U32(params);
      Need(params + 4, 2 * size_t{n}, "type_list");
      for (uint32_t k = 0; k < n; ++k) descriptor += RawType(U16(params + 4 + 2 * k));
    }
    descriptor += ")";
    descriptor += RawType(U32(proto + 4));
    slot = ApiSignature{Type(class_idx), String(name_idx), std::move(descriptor)};
    return *slot;
  }

  [[noreturn]] void BadStream(const std::string& what) const {
    throw Error(ErrorCode::kBadInstructionStream, "dex: " + what);
  }

  void ScanCode(size_t code_off, const std::string& call_site,
                std::vector<MethodRef>& out) {
    Need(code_off, 16, "code_item");
    uint32_t units = U32(code_off + 12);
    size_t insns = code_off + 16;
    if (insns > b_.size() || units > (b_.size() - insns) / 2) {
      BadStream("code item at " + std::to_string(code_off) + " is truncated");
    }
    size_t pc = 0;
    while (pc < units) {
      uint16_t unit = U16(insns + 2 * pc);
      uint8_t op = unit & 0xff;
      size_t width = kWidths[op];
      if (op == 0x00 && (unit >> 8) != 0) {
        width = PayloadWidth(unit >> 8, insns, pc, units);
      }
      if (width > units - pc) {
        BadStream("instruction at " + std::to_string(pc) + " runs past the code item");
      }
      if (IsInvoke(op)) {
        out.push_back(MethodRef{call_site, Method(U16(insns + 2 * (pc + 1)))});
      }
      pc += width;
    }
  }

  size_t PayloadWidth(unsigned ident, size_t insns, size_t pc, size_t units) const {
    if (units - pc < 2) BadStream("truncated payload");
    auto at = [&](size_t k) { return insns + 2 * (pc + k); };
    switch (ident) {
      case 0x01:  // packed-switch: ident, size, first_key(2), targets
        return 4 + 2 * size_t{U16(at(1))};
      case 0x02:  // sparse-switch: ident, size, keys, targets
        return 2 + 4 * size_t{U16(at(1))};
      case 0x03: {  // fill-array-data: ident, width, size(2), data
        if (units - pc < 4) BadStream("truncated payload");
        uint64_t bytes = uint64_t{U16(at(1))} * U32(at(2));
        return 4 + static_cast<size_t>((bytes + 1) / 2);
      }
      default:
        return 1;  // a nop with junk in the high byte
    }
  }

  std::string_view b_;
  Range string_ids_, type_ids_, proto_ids_, method_ids_, class_defs_;
  std::vector<std::optional<std::string>> type_cache_;
  std::vector<std::optional<ApiSignature>> method_cache_;
};

}  // namespace

std::vector<MethodRef> ExtractMethodRefs(std::string_view dex) {
  std::vector<MethodRef> out;
  DexFile(dex).Collect(out);
  return out;
}

std::vector<MethodRef> ExtractMethodRefs(std::span<const std::string> dex_files) {
  std::vector<MethodRef> out;
  for (const std::string& dex : dex_files) DexFile(dex).Collect(out);
  return out;
}

}  // namespace sdklint
