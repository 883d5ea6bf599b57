# Copyright (C) 2026 The sdklint Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Encodes a plain-text Android manifest into the binary XML chunk format.

Follows the layout aapt produces: a string pool whose leading entries are the
attribute names covered by the resource map, then the resource map, then the
namespace/element node chunks.
"""

import struct
import xml.sax

ANDROID_NS = "http://schemas.android.com/apk/res/android"

RES_STRING_POOL_TYPE = 0x0001
RES_XML_TYPE = 0x0003
RES_XML_START_NAMESPACE_TYPE = 0x0100
RES_XML_END_NAMESPACE_TYPE = 0x0101
RES_XML_START_ELEMENT_TYPE = 0x0102
RES_XML_END_ELEMENT_TYPE = 0x0103
RES_XML_RESOURCE_MAP_TYPE = 0x0180

TYPE_STRING = 0x03
TYPE_INT_DEC = 0x10
TYPE_INT_BOOLEAN = 0x12

ATTR_IDS = {
    "label": 0x01010001,
    "name": 0x01010003,
    "minSdkVersion": 0x0101020C,
    "versionCode": 0x0101021B,
    "versionName": 0x0101021C,
    "targetSdkVersion": 0x01010270,
    "maxSdkVersion": 0x01010271,
}
INT_ATTRS = {"minSdkVersion", "targetSdkVersion", "maxSdkVersion", "versionCode"}

NO_INDEX = 0xFFFFFFFF


class _Collector(xml.sax.ContentHandler):
    def __init__(self):
        super().__init__()
        self.events = []
        self.pending_ns = []

    def startPrefixMapping(self, prefix, uri):
        self.events.append(("start-ns", prefix or "", uri))

    def endPrefixMapping(self, prefix):
        self.events.append(("end-ns", prefix or ""))

    def startElementNS(self, name, qname, attrs):
        items = []
        for (uri, local), value in attrs.items():
            items.append((uri, local, value))
        self.events.append(("start", name[0], name[1], items))

    def endElementNS(self, name, qname):
        self.events.append(("end", name[0], name[1]))


def _encode_pool(strings, utf8):
    offsets = []
    blob = bytearray()
    for s in strings:
        offsets.append(len(blob))
        if utf8:
            raw = s.encode("utf-8")
            for n in (len(s), len(raw)):
                if n > 0x7F:
                    blob += bytes([0x80 | (n >> 8), n & 0xFF])
                else:
                    blob.append(n)
            blob += raw + b"\x00"
        else:
            units = s.encode("utf-16-le")
            n = len(units) // 2
            if n > 0x7FFF:
                blob += struct.pack("<HH", 0x8000 | (n >> 16), n & 0xFFFF)
            else:
                blob += struct.pack("<H", n)
            blob += units + b"\x00\x00"
    while len(blob) % 4:
        blob.append(0)
    header_size = 28
    strings_start = header_size + 4 * len(strings)
    flags = 0x100 if utf8 else 0
    size = strings_start + len(blob)
    out = struct.pack("<HHIIIIII", RES_STRING_POOL_TYPE, header_size, size,
                      len(strings), 0, flags, strings_start, 0)
    out += b"".join(struct.pack("<I", o) for o in offsets)
    return out + bytes(blob)


def encode(text, utf8=False):
    handler = _Collector()
    parser = xml.sax.make_parser()
    parser.setFeature(xml.sax.handler.feature_namespaces, True)
    parser.setContentHandler(handler)
    import io
    parser.parse(io.BytesIO(text.encode("utf-8")))
    events = handler.events

    # attribute names with resource ids go first, aligned with the map
    res_names = []
    for ev in events:
        if ev[0] == "start":
            for uri, local, _ in ev[3]:
                if uri == ANDROID_NS and local in ATTR_IDS and local not in res_names:
                    res_names.append(local)
    strings = list(res_names)

    def sidx(s):
        if s not in strings:
            strings.append(s)
        return strings.index(s)

    def opt(s):
        return NO_INDEX if s is None else sidx(s)

    nodes = bytearray()
    line = 1
    for ev in events:
        line += 1
        if ev[0] == "start-ns":
            _, prefix, uri = ev
            body = struct.pack("<II", sidx(prefix), sidx(uri))
            nodes += struct.pack("<HHIII", RES_XML_START_NAMESPACE_TYPE, 16,
                                 16 + len(body), line, NO_INDEX) + body
        elif ev[0] == "end-ns":
            continue
        elif ev[0] == "start":
            _, uri, local, attrs = ev
            # android attributes sorted by resource id, like aapt
            attrs = sorted(attrs, key=lambda a: (a[0] != ANDROID_NS,
                                                 ATTR_IDS.get(a[1], 0xFFFFFFFF),
                                                 a[1]))
            abytes = bytearray()
            for auri, alocal, value in attrs:
                name_idx = sidx(alocal)
                if alocal in INT_ATTRS and value.strip().lstrip("-").isdigit():
                    raw, dtype, data = NO_INDEX, TYPE_INT_DEC, int(value) & 0xFFFFFFFF
                elif value in ("true", "false"):
                    raw, dtype, data = NO_INDEX, TYPE_INT_BOOLEAN, (
                        0xFFFFFFFF if value == "true" else 0)
                else:
                    raw = sidx(value)
                    dtype, data = TYPE_STRING, raw
                abytes += struct.pack("<IIIHBBI", opt(auri), name_idx, raw, 8, 0,
                                      dtype, data)
            ext = struct.pack("<IIHHHHHH", opt(uri), sidx(local), 20, 20,
                              len(attrs), 0, 0, 0)
            body = ext + bytes(abytes)
            nodes += struct.pack("<HHIII", RES_XML_START_ELEMENT_TYPE, 16,
                                 16 + len(body), line, NO_INDEX) + body
        elif ev[0] == "end":
            _, uri, local = ev
            body = struct.pack("<II", opt(uri), sidx(local))
            nodes += struct.pack("<HHIII", RES_XML_END_ELEMENT_TYPE, 16,
                                 16 + len(body), line, NO_INDEX) + body
    # closing namespaces, innermost first
    for ev in reversed(events):
        if ev[0] == "start-ns":
            _, prefix, uri = ev
            body = struct.pack("<II", sidx(prefix), sidx(uri))
            nodes += struct.pack("<HHIII", RES_XML_END_NAMESPACE_TYPE, 16,
                                 16 + len(body), line, NO_INDEX) + body

    pool = _encode_pool(strings, utf8)
    resmap = b"".join(struct.pack("<I", ATTR_IDS[n]) for n in res_names)
    resmap = struct.pack("<HHI", RES_XML_RESOURCE_MAP_TYPE, 8, 8 + len(resmap)) + resmap
    body = pool + resmap + bytes(nodes)
    return struct.pack("<HHI", RES_XML_TYPE, 8, 8 + len(body)) + body
