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

#include "sdklint/store_page.h"

#include <gtest/gtest.h>

#include "sdklint/error.h"
#include "test_util.h"

namespace sdklint {
namespace {

using testing::ReadFixture;

TEST(StorePageTest, AllVaries) {
  StoreMetadata meta = ParseStorePage(ReadFixture("pages/varies.page.html"), "fb");
  EXPECT_EQ(meta.app_id, "fb");
  EXPECT_EQ(meta.size, kVariesWithDevice);
  EXPECT_EQ(meta.current_version, kVariesWithDevice);
  EXPECT_EQ(meta.requires_android, kVariesWithDevice);
  EXPECT_TRUE(IsMultipleApk(meta));
}

TEST(StorePageTest, LiteralValues) {
  StoreMetadata meta = ParseStorePage(ReadFixture("pages/plain.page.html"));
  EXPECT_EQ(meta.size, "12M");
  EXPECT_EQ(meta.current_version, "2.3.1");
  EXPECT_EQ(meta.requires_android, "4.0 and up");
  EXPECT_FALSE(IsMultipleApk(meta));
}

TEST(StorePageTest, SizeOnlyVaries) {
  StoreMetadata meta = ParseStorePage(ReadFixture("pages/size_only_varies.page.html"));
  EXPECT_EQ(meta.size, kVariesWithDevice);
  EXPECT_EQ(meta.requires_android, "2.3 and up");
  EXPECT_TRUE(IsMultipleApk(meta));
}

TEST(StorePageTest, NoLabels) {
  try {
    ParseStorePage(ReadFixture("pages/no_labels.page.html"));
    FAIL() << "expected NoAttributesFound";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoAttributesFound);
  }
}

TEST(StorePageTest, MissingLabelLeavesFieldEmpty) {
  StoreMetadata meta = ParseStorePage("<p>Size</p><p>3.1M</p>");
  EXPECT_EQ(meta.size, "3.1M");
  EXPECT_EQ(meta.current_version, "");
  EXPECT_EQ(meta.requires_android, "");
}

TEST(StorePageTest, EntitiesAndWhitespace) {
  StoreMetadata meta =
      ParseStorePage("<div>Requires&#32;Android</div>\n<div>\n 4.4&nbsp;and&#x20;up </div>");
  EXPECT_EQ(meta.requires_android, "4.4 and up");
}

TEST(IsMultipleApkTest, ExactCaseSensitiveMatch) {
  EXPECT_FALSE(IsMultipleApk({"a", "", "", ""}));
  EXPECT_FALSE(IsMultipleApk({"a", "varies with device", "1.0", "4.0 and up"}));
  EXPECT_FALSE(IsMultipleApk({"a", "Varies with device.", "", ""}));
  EXPECT_TRUE(IsMultipleApk({"a", "", "", "Varies with device"}));
  EXPECT_TRUE(IsMultipleApk({"a", "", "Varies with device", ""}));
}

}  // namespace
}  // namespace sdklint
