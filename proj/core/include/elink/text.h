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

#ifndef ELINK_TEXT_H_
#define ELINK_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace elink::text {

// Surface-form normalization: Unicode NFC, lowercase, internal whitespace
// runs collapsed to one space, leading and trailing whitespace stripped.
std::string Normalize(std::string_view s);

// Lowercased alphanumeric tokens of the normalized string, sorted and
// deduplicated (a token set).
std::vector<std::string> TokenSet(std::string_view s);

// TokenSet with English function words removed.
std::vector<std::string> ContentTokenSet(std::string_view s);

bool IsStopword(std::string_view token);

// |a ∩ b| / |a ∪ b| over sorted unique token vectors; 0 when both are empty.
double Jaccard(const std::vector<std::string> &a,
               const std::vector<std::string> &b);

// True if every element of `sub` is in `super` (both sorted unique).
bool IsSubset(const std::vector<std::string> &sub,
              const std::vector<std::string> &super);

bool IsValidUtf8(std::string_view s);

// True if `offset` does not fall inside a multi-byte UTF-8 sequence.
bool IsCharBoundary(std::string_view s, size_t offset);

// Replaces every whitespace run (including newlines) by a single space and
// trims both ends. ASCII only; used to keep prompt lines on one line.
std::string SingleLine(std::string_view s);

std::string Trim(std::string_view s);

}  // namespace elink::text

#endif  // ELINK_TEXT_H_
