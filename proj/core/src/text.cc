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

#include <algorithm>
#include <iterator>
#include <string>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

namespace elink::text {
namespace {

// Common English function words, excluded from context overlap.
constexpr std::string_view kStopwords[] = {
    "a",       "about",   "above",   "after",   "again",   "against",
    "all",     "also",    "am",      "an",      "and",     "any",
    "are",     "as",      "at",      "be",      "because", "been",
    "before",  "being",   "below",   "between", "both",    "but",
    "by",      "can",     "could",   "did",     "do",      "does",
    "doing",   "down",    "during",  "each",    "few",     "for",
    "from",    "further", "had",     "has",     "have",    "having",
    "he",      "her",     "here",    "hers",    "herself", "him",
    "himself", "his",     "how",     "i",       "if",      "in",
    "into",    "is",      "it",      "its",     "itself",  "just",
    "me",      "more",    "most",    "my",      "myself",
    "no",      "nor",     "not",     "now",     "of",      "off",
    "on",      "once",    "one",     "only",    "or",      "other",
    "our",     "ours",    "out",     "over",    "own",
    "same",    "she",     "should",  "so",      "some",    "such",
    "than",    "that",    "the",     "their",   "theirs",  "them",
    "then",    "there",   "these",   "they",    "this",    "those",
    "through", "to",      "too",     "under",   "until",   "up",
    "very",    "was",     "we",      "were",    "what",    "when",
    "where",   "which",   "while",   "who",     "whom",    "why",
    "will",    "with",    "would",   "you",     "your",    "yours",
};

icu::UnicodeString ToUnicode(std::string_view s) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

icu::UnicodeString NfcLower(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString u = ToUnicode(s);
  if (U_FAILURE(status)) return u.toLower(icu::Locale::getRoot());
  icu::UnicodeString n = nfc->normalize(u, status);
  if (U_FAILURE(status)) n = u;
  n.toLower(icu::Locale::getRoot());
  // Case mapping can denormalize a few sequences.
  status = U_ZERO_ERROR;
  icu::UnicodeString again = nfc->normalize(n, status);
  return U_FAILURE(status) ? n : again;
}

void AppendCodePoint(std::string &out, UChar32 c) {
  icu::UnicodeString u(c);
  u.toUTF8String(out);
}

bool IsTokenChar(UChar32 c) {
  if (u_isalnum(c)) return true;
  int8_t type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK;
}

void SortUnique(std::vector<std::string> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string Normalize(std::string_view s) {
  icu::UnicodeString u = NfcLower(s);
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (int32_t i = 0; i < u.length();) {
    UChar32 c = u.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    AppendCodePoint(out, c);
  }
  return out;
}

std::vector<std::string> TokenSet(std::string_view s) {
  icu::UnicodeString u = NfcLower(s);
  std::vector<std::string> tokens;
  std::string current;
  for (int32_t i = 0; i < u.length();) {
    UChar32 c = u.char32At(i);
    i += U16_LENGTH(c);
    if (IsTokenChar(c)) {
      AppendCodePoint(current, c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  SortUnique(tokens);
  return tokens;
}

bool IsStopword(std::string_view token) {
  return std::find(std::begin(kStopwords), std::end(kStopwords), token) !=
         std::end(kStopwords);
}

std::vector<std::string> ContentTokenSet(std::string_view s) {
  std::vector<std::string> tokens = TokenSet(s);
  std::erase_if(tokens, [](const std::string &t) { return IsStopword(t); });
  return tokens;
}

double Jaccard(const std::vector<std::string> &a,
               const std::vector<std::string> &b) {
  if (a.empty() && b.empty()) return 0.0;
  size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

bool IsSubset(const std::vector<std::string> &sub,
              const std::vector<std::string> &super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool IsValidUtf8(std::string_view s) {
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    size_t len;
    uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (size_t j = 1; j < len; ++j) {
      auto cc = static_cast<unsigned char>(s[i + j]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

bool IsCharBoundary(std::string_view s, size_t offset) {
  if (offset == 0 || offset >= s.size()) return offset <= s.size();
  return (static_cast<unsigned char>(s[offset]) & 0xC0) != 0x80;
}

std::string SingleLine(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (b < e && space(s[b])) ++b;
  while (e > b && space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace elink::text
