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

"""Independent counts over an api-versions document and a change-event CSV.

Uses ElementTree and the csv module only; shares no code with the C++ parser.
Prints the numbers the C++ tests freeze.
"""

import collections
import csv
import json
import sys
import xml.etree.ElementTree as ET


def entries(path):
    root = ET.parse(path).getroot()
    out = {}
    for cls in root.findall("class"):
        cname = cls.get("name")
        csince = int(cls.get("since", "1"))
        out[cname] = (csince, cls.get("deprecated"), cls.get("removed"))
        for m in list(cls.findall("method")) + list(cls.findall("field")):
            name = m.get("name")
            key = cname + ";->" + name
            out[key] = (int(m.get("since", csince)), m.get("deprecated"),
                        m.get("removed"))
    return out


def main(xml_path, csv_path=None):
    e = entries(xml_path)
    hist = collections.Counter(v[0] for v in e.values())
    result = {
        "classes": sum(1 for k in e if ";->" not in k),
        "members": sum(1 for k in e if ";->" in k),
        "total": len(e),
        "deprecated": sum(1 for v in e.values() if v[1]),
        "removed": sum(1 for v in e.values() if v[2]),
        "added_per_level": dict(sorted(hist.items())),
    }
    if csv_path:
        applied = warnings = 0
        with open(csv_path) as f:
            for row in csv.DictReader(f):
                sig = row["signature"]
                if sig not in e:
                    warnings += 1
                    continue
                added, dep, _ = e[sig]
                level = int(row["level"])
                ok = level > added and (dep is None or int(dep) <= level)
                if row["event"] == "removed" and ok:
                    applied += 1
                else:
                    warnings += 1
        result["events_applied"] = applied
        result["events_warnings"] = warnings
    print(json.dumps(result, indent=1))


if __name__ == "__main__":
    main(*sys.argv[1:])
