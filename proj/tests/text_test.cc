// Copyright 2026 The elink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "elink/text.h"

#include <gtest/gtest.h>

namespace elink::text {
namespace {

using Tokens = std::vector<std::string>;

TEST(NormalizeTest, LowercasesAndCollapsesWhitespace) {
  EXPECT_EQ(Normalize("  New   York\tCity \n"), "new york city");
  EXPECT_EQ(Normalize("IBM"), "ibm");
  EXPECT_EQ(Normalize(""), "");
  EXPECT_EQ(Normalize(" \t "), "");
}

TEST(NormalizeTest, ComposesToNfc) {
  // "e" + combining acute vs precomposed "é".
  EXPECT_EQ(Normalize("Caf\x65\xCC\x81"), Normalize("Caf\xC3\xA9"));
  EXPECT_EQ(Normalize("CAF\xC3\x89"), "caf\xC3\xA9");
}

TEST(NormalizeTest, UnicodeWhitespaceCollapses) {
  // U+00A0 no-break space and U+2003 em space.
  EXPECT_EQ(Normalize("a\xC2\xA0\xE2\x80\x83" "b"), "a b");
}

TEST(TokenSetTest, SplitsOnNonAlphanumerics) {
  EXPECT_EQ(TokenSet("Washington, D.C."), (Tokens{"c", "d", "washington"}));
  EXPECT_EQ(TokenSet("Sony Music sony"), (Tokens{"music", "sony"}));
  EXPECT_TRUE(TokenSet("--").empty());
}

TEST(TokenSetTest, ContentTokensDropStopwords) {
  EXPECT_EQ(ContentTokenSet("The river of the north"),
            (Tokens{"north", "river"}));
}

TEST(JaccardTest, Basics) {
  EXPECT_DOUBLE_EQ(Jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(Jaccard({"a"}, {"a"}), 1.0);
  EXPECT_DOUBLE_EQ(Jaccard({}, {}), 0.0);
  EXPECT_DOUBLE_EQ(Jaccard({"a"}, {}), 0.0);
}

TEST(SubsetTest, Containment) {
  EXPECT_TRUE(IsSubset({"sony"}, {"music", "sony"}));
  EXPECT_FALSE(IsSubset({"moscow"}, {"russia"}));
  EXPECT_TRUE(IsSubset({}, {"x"}));
}

TEST(Utf8Test, Validity) {
  EXPECT_TRUE(IsValidUtf8("plain"));
  EXPECT_TRUE(IsValidUtf8("caf\xC3\xA9 \xF0\x9F\x98\x80"));
  EXPECT_FALSE(IsValidUtf8("\xC3"));
  EXPECT_FALSE(IsValidUtf8("\xC0\xAF"));          // overlong
  EXPECT_FALSE(IsValidUtf8("\xED\xA0\x80"));      // surrogate
  EXPECT_FALSE(IsValidUtf8("\xF4\x90\x80\x80"));  // > U+10FFFF
}

TEST(Utf8Test, CharBoundaries) {
  std::string s = "a\xC3\xA9z";  // a é z
  EXPECT_TRUE(IsCharBoundary(s, 0));
  EXPECT_TRUE(IsCharBoundary(s, 1));
  EXPECT_FALSE(IsCharBoundary(s, 2));
  EXPECT_TRUE(IsCharBoundary(s, 3));
  EXPECT_TRUE(IsCharBoundary(s, 4));
  EXPECT_FALSE(IsCharBoundary(s, 5));
}

TEST(SingleLineTest, FoldsNewlines) {
  EXPECT_EQ(SingleLine(" a\n\nb \t c "), "a b c");
  EXPECT_EQ(Trim("  x y \n"), "x y");
}

}  // namespace
}  // namespace elink::text
