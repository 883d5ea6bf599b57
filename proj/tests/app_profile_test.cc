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

#include "sdklint/app_profile.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sdklint/dex.h"
#include "sdklint/error.h"
#include "test_util.h"

namespace sdklint {
namespace {

using testing::ReadFixture;

MethodRef Ref(std::string site, std::string cls, std::string member = "m") {
  return MethodRef{std::move(site), ApiSignature{std::move(cls), std::move(member), "()V"}};
}

TEST(FilterLibraryCallsTest, CallSiteRuleOnly) {
  std::vector<MethodRef> refs = {
      Ref("android/support/v7/widget/X", "android/view/View"),
      Ref("com/example/Main", "android/support/v4/app/Fragment"),
  };
  auto kept = FilterLibraryCalls(refs, DefaultLibraryPrefixes());
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].call_site_class, "com/example/Main");
}

TEST(FilterLibraryCallsTest, EmptyPrefixListIsIdentity) {
  std::vector<MethodRef> refs = {Ref("android/support/v7/widget/X", "a/B"),
                                 Ref("com/example/Main", "a/B")};
  EXPECT_EQ(FilterLibraryCalls(refs, {}), refs);
}

TEST(FilterLibraryCallsTest, DefaultPrefixes) {
  const auto& p = DefaultLibraryPrefixes();
  for (const char* expected : {"android/support/", "androidx/", "com/google/android/gms/"}) {
    EXPECT_NE(std::find(p.begin(), p.end(), expected), p.end()) << expected;
  }
}

// Filtering twice equals filtering once, and the kept multiset does not
// depend on input order.
TEST(FilterLibraryCallsTest, PropertyIdempotentAndOrderInsensitive) {
  std::mt19937 rng(3);
  const std::vector<std::string> sites = {"android/support/a/B", "androidx/x/Y", "com/example/A",
                                          "com/example/B", "kotlin/io/F", "android/supportive/Z"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<MethodRef> refs;
    int n = testing::Uniform(rng, 0, 25);
    for (int i = 0; i < n; ++i) {
      refs.push_back(Ref(sites[testing::Uniform(rng, 0, int(sites.size()) - 1)], "a/B",
                         "m" + std::to_string(testing::Uniform(rng, 0, 3))));
    }
    auto once = FilterLibraryCalls(refs, DefaultLibraryPrefixes());
    EXPECT_EQ(FilterLibraryCalls(once, DefaultLibraryPrefixes()), once);
    auto shuffled = refs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto other = FilterLibraryCalls(shuffled, DefaultLibraryPrefixes());
    std::sort(once.begin(), once.end());
    std::sort(other.begin(), other.end());
    EXPECT_EQ(once, other);
    for (const auto& r : once) EXPECT_FALSE(r.call_site_class.starts_with("androidx/"));
  }
}

TEST(DescriptorTest, NoRefs) {
  AppProfile p = LoadAppDescriptor(ReadFixture("descriptors/empty.json"),
                                   DefaultLibraryPrefixes());
  EXPECT_EQ(p.app_id, "empty");
  EXPECT_EQ(p.declared, DeclaredSdkRaw{});
  EXPECT_TRUE(p.all_refs.empty());
  EXPECT_TRUE(p.own_refs.empty());
}

TEST(DescriptorTest, LibraryAndOwnCounts) {
  AppProfile p = LoadAppDescriptor(ReadFixture("descriptors/library_mix.json"),
                                   DefaultLibraryPrefixes());
  EXPECT_EQ(p.all_refs.size(), 5u);
  EXPECT_EQ(p.own_refs.size(), 2u);
  EXPECT_EQ(p.declared.min_raw, 9);
}

TEST(DescriptorTest, SideEffectFixture) {
  AppProfile p = LoadAppDescriptor(ReadFixture("descriptors/vpn_min19.json"),
                                   DefaultLibraryPrefixes());
  EXPECT_EQ(p.declared.min_raw, 19);
  EXPECT_FALSE(p.declared.max_raw);
  ASSERT_EQ(p.own_refs.size(), 2u);
  EXPECT_EQ(p.own_refs[0].target.ToString(),
            "android/net/VpnService$Builder;->addDisallowedApplication(Ljava/lang/String;)"
            "Landroid/net/VpnService$Builder;");
}

TEST(DescriptorTest, AcceptsTypeDescriptorClassNames) {
  AppProfile p = LoadAppDescriptor(
      R"({"app_id":"a","refs":[{"call_site":"Lcom/x/Y;","class":"Landroid/view/View;",)"
      R"("member":"setElevation","descriptor":"(F)V"}]})",
      DefaultLibraryPrefixes());
  ASSERT_EQ(p.all_refs.size(), 1u);
  EXPECT_EQ(p.all_refs[0].call_site_class, "com/x/Y");
  EXPECT_EQ(p.all_refs[0].target.class_name, "android/view/View");
}

TEST(DescriptorTest, SchemaViolations) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"min": 3})",
      R"({"app_id": 5})",
      R"({"app_id": "a", "min": "nine"})",
      R"({"app_id": "a", "min": 9.5})",
      R"({"app_id": "a", "refs": {}})",
      R"({"app_id": "a", "refs": [{"call_site": "a/B"}]})",
      R"({"app_id": "a", "refs": [{"call_site": "", "class": "a/B", "member": "m",
                                   "descriptor": "()V"}]})",
  };
  for (const char* doc : bad) {
    try {
      LoadAppDescriptor(doc, DefaultLibraryPrefixes());
      ADD_FAILURE() << "accepted: " << doc;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation) << doc;
    }
  }
}

TEST(IngestApkTest, MultidexProfile) {
  AppProfile p = IngestApk(ReadFixture("apk/multidex.apk"), "multidex", DefaultLibraryPrefixes());
  EXPECT_EQ(p.app_id, "multidex");
  EXPECT_EQ(p.declared.min_raw, 9);
  EXPECT_EQ(p.declared.target_raw, 16);
  EXPECT_EQ(p.all_refs.size(), 12u);
  EXPECT_EQ(p.own_refs, FilterLibraryCalls(p.all_refs, DefaultLibraryPrefixes()));
}

TEST(IngestApkTest, VpnFixture) {
  AppProfile p = IngestApk(ReadFixture("apk/vpn_min19.apk"), "vpn", DefaultLibraryPrefixes());
  EXPECT_EQ(p.declared.min_raw, 19);
  bool found = std::any_of(p.own_refs.begin(), p.own_refs.end(), [](const MethodRef& r) {
    return r.target.member == "addDisallowedApplication";
  });
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace sdklint
