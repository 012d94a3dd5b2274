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

#include "elink/disambig.h"

#include <climits>

#include "elink/error.h"
#include "elink/text.h"

namespace elink {

ChoiceParse ParseChoice(std::string_view completion, int n_options) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  size_t i = 0;
  while (i < completion.size() && !is_digit(completion[i])) ++i;
  if (i == completion.size()) return {ChoiceStatus::kNoInteger, 0};

  long long value = 0;
  bool overflow = false;
  for (; i < completion.size() && is_digit(completion[i]); ++i) {
    if (!overflow) {
      value = value * 10 + (completion[i] - '0');
      if (value > INT_MAX) overflow = true;
    }
  }
  if (overflow) return {ChoiceStatus::kOutOfRange, INT_MAX};
  const int v = static_cast<int>(value);
  if (v > n_options) return {ChoiceStatus::kOutOfRange, v};
  return {ChoiceStatus::kOk, v};
}

std::string FormatOptions(const CandidateList &candidates) {
  std::string out;
  for (size_t i = 0; i < candidates.items.size(); ++i) {
    const Candidate &c = candidates.items[i];
    out += std::to_string(i + 1) + ". " + text::SingleLine(c.title) + " —";
    std::string description = text::SingleLine(c.description);
    if (!description.empty()) out += " " + description;
    out += '\n';
  }
  out += "0. None of the above";
  return out;
}

std::string BuildChoicePrompt(const Document &doc, size_t index,
                              std::string_view interpretation,
                              const CandidateList &c_final,
                              const PromptTemplate &tpl) {
  if (c_final.empty()) {
    throw Error("BuildChoicePrompt called with an empty candidate list");
  }
  TemplateVars vars{
      {"text", MarkedText(doc, index)},
      {"mention", doc.mentions.at(index).surface},
      {"interpretation", text::SingleLine(interpretation)},
      {"candidates", FormatOptions(c_final)},
  };
  return Render(tpl, vars);
}

Choice AskForChoice(const std::string &prompt, int n_options, LlmClient &llm,
                    const CompletionParams &params) {
  Choice choice;
  std::string request = prompt;
  for (int attempt = 1; attempt <= 2; ++attempt) {
    choice.raw = llm.Complete(params.MakeRequest(request));
    choice.attempts = attempt;
    ChoiceParse parsed = ParseChoice(choice.raw, n_options);
    if (parsed.ok()) {
      choice.index = parsed.value;
      return choice;
    }
    if (attempt == 1) {
      if (!request.empty() && request.back() != '\n') request += '\n';
      request += kRetryInstruction;
    }
  }
  choice.index = 0;
  choice.unparseable = true;
  return choice;
}

Choice Select(const Document &doc, size_t index,
              std::string_view interpretation, const CandidateList &c_final,
              LlmClient &llm, const PromptTemplate &tpl,
              const CompletionParams &params) {
  if (c_final.empty()) return Choice{};
  std::string prompt =
      BuildChoicePrompt(doc, index, interpretation, c_final, tpl);
  return AskForChoice(prompt, static_cast<int>(c_final.size()), llm, params);
}

}  // namespace elink
