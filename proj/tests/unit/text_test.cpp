/*
 * Copyright 2026 The ConceptWiki Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include "cw/text.hpp"

namespace {

namespace text = cw::text;

TEST(Text, Trim) {
  EXPECT_EQ(text::trim("  a b \t\r\n"), "a b");
  EXPECT_EQ(text::trim(""), "");
  EXPECT_EQ(text::trim(" \t "), "");
  EXPECT_EQ(text::trim("\xC2\xA0x\xC2\xA0"), "\xC2\xA0x\xC2\xA0");  // NBSP is not ASCII whitespace
}

TEST(Text, Utf8Validation) {
  EXPECT_TRUE(text::is_valid_utf8("plain"));
  EXPECT_TRUE(text::is_valid_utf8("\xE6\xBC\xA2\xF0\x9F\x98\x80"));
  EXPECT_EQ(text::first_invalid_utf8("ab\xFF"), 2u);
  EXPECT_EQ(text::first_invalid_utf8("a\xC0\xAF"), 1u);          // overlong '/'
  EXPECT_EQ(text::first_invalid_utf8("\xED\xA0\x80"), 0u);       // surrogate
  EXPECT_EQ(text::first_invalid_utf8("xy\xE6\xBC"), 2u);         // truncated
  EXPECT_EQ(text::first_invalid_utf8("\xF4\x90\x80\x80"), 0u);   // above U+10FFFF
}

// Expected values from Python: unicodedata.normalize("NFC", s.casefold()).
TEST(Text, FoldMatchesPythonCasefoldOracle) {
  EXPECT_EQ(text::fold("Aldehyde Reductase"), "aldehyde reductase");
  EXPECT_EQ(text::fold("Stra\xC3\x9F" "e"), "strasse");
  EXPECT_EQ(text::fold("\xEF\xAC\x81le"), "file");
  EXPECT_EQ(text::fold("A\xCC\x8A"), "\xC3\xA5");
  EXPECT_EQ(text::fold("\xCE\xA3\xCE\x8A\xCE\xA3\xCE\xA5\xCE\xA6\xCE\x9F\xCE\xA3"),
            "\xCF\x83\xCE\xAF\xCF\x83\xCF\x85\xCF\x86\xCE\xBF\xCF\x83");
  EXPECT_EQ(text::fold("\xC4\xB0stanbul"), "i\xCC\x87stanbul");
  EXPECT_EQ(text::fold("1.1.1.1"), "1.1.1.1");
}

TEST(Text, ControlCharacters) {
  EXPECT_FALSE(text::has_control_chars("a b"));
  EXPECT_TRUE(text::has_control_chars("a\tb"));
  EXPECT_TRUE(text::has_control_chars("a\nb"));
  EXPECT_TRUE(text::has_control_chars(std::string("a\0b", 3)));
  EXPECT_TRUE(text::has_control_chars("a\x7F"));
}

TEST(Text, LanguageTags) {
  EXPECT_EQ(text::normalize_language_tag("EN"), "en");
  EXPECT_EQ(text::normalize_language_tag("en-GB"), "en-gb");
  EXPECT_EQ(text::normalize_language_tag("zxx"), "zxx");
  EXPECT_FALSE(text::normalize_language_tag(""));
  EXPECT_FALSE(text::normalize_language_tag("en_GB"));
  EXPECT_FALSE(text::normalize_language_tag("e1"));
  EXPECT_FALSE(text::normalize_language_tag("en-"));
  EXPECT_FALSE(text::normalize_language_tag("abcdefghi"));
}

}  // namespace
