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

#ifndef SDKLINT_APK_H_
#define SDKLINT_APK_H_

#include <string>
#include <string_view>
#include <vector>

namespace sdklint {

struct ApkContents {
  std::string manifest;
  // classes.dex, classes2.dex, ... in numeric order.
  std::vector<std::string> dex_files;
};

// Reads the ZIP central directory and inflates only the entries needed.
// Throws kNotZip (including corrupt or unsupported entries), kMissingManifest
// or kMissingDex.
ApkContents OpenApk(std::string_view zip);

}  // namespace sdklint

#endif  // SDKLINT_APK_H_
