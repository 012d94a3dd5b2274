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

#ifndef ELINK_DISAMBIG_H_
#define ELINK_DISAMBIG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elink/candidate.h"
#include "elink/corpus.h"
#include "elink/llm.h"
#include "elink/template.h"

namespace elink {

// An answer to a multiple-choice prompt. index 0 means none of the options.
struct Choice {
  int index = 0;
  std::string raw;  // completion that produced the decision
  int attempts = 0;  // LLM calls made (0 when short-circuited)
  bool unparseable = false;
};

enum class ChoiceStatus { kOk, kNoInteger, kOutOfRange };

struct ChoiceParse {
  ChoiceStatus status = ChoiceStatus::kNoInteger;
  int value = 0;  // the extracted integer for kOk and kOutOfRange

  bool ok() const { return status == ChoiceStatus::kOk; }
};

// Extracts the first standalone integer (an ASCII digit run bounded by
// non-digits) and accepts it iff 0 <= value <= n_options. Digit runs too
// long to represent are out of range.
ChoiceParse ParseChoice(std::string_view completion, int n_options);

// Appended to the prompt for the single retry after a parse failure.
inline constexpr std::string_view kRetryInstruction =
    "Answer with a single number.";

// Numbered option block: "i. title — description" for each candidate, then
// "0. None of the above".
std::string FormatOptions(const CandidateList &candidates);

// Renders the disambiguation prompt. Requires a non-empty candidate list.
std::string BuildChoicePrompt(const Document &doc, size_t index,
                              std::string_view interpretation,
                              const CandidateList &c_final,
                              const PromptTemplate &tpl);

// Sends `prompt`, parses the answer, and on failure retries once with
// kRetryInstruction appended. A second failure yields index 0 with
// unparseable set.
Choice AskForChoice(const std::string &prompt, int n_options, LlmClient &llm,
                    const CompletionParams &params);

// Multiple-choice disambiguation over c_final. An empty list yields index 0
// without calling the LLM.
Choice Select(const Document &doc, size_t index,
              std::string_view interpretation, const CandidateList &c_final,
              LlmClient &llm, const PromptTemplate &tpl,
              const CompletionParams &params);

}  // namespace elink

#endif  // ELINK_DISAMBIG_H_
