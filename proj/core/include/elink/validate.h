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

#ifndef ELINK_VALIDATE_H_
#define ELINK_VALIDATE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elink/candidate.h"
#include "elink/corpus.h"
#include "elink/disambig.h"
#include "elink/llm.h"
#include "elink/template.h"

namespace elink {

// A stage-2 link taking part in global validation.
struct LinkedMention {
  size_t mention_index = 0;
  size_t start = 0;
  size_t end = 0;
  std::string surface;
  std::string entity_id;
  std::string title;
  std::string description;
};

// The original text, the entity-replaced text, and the linked entities in
// mention order.
struct GlobalContext {
  std::string original;
  std::string replaced;
  std::vector<LinkedMention> links;
};

struct Substitution {
  std::string text;
  // Span of every mention in the new text, in mention order.
  std::vector<std::pair<size_t, size_t>> spans;
};

// Replaces each mention span whose title is set by that title; NIL mentions
// keep their surface. `titles` has one slot per mention.
Substitution SubstituteWithSpans(
    const Document &doc, std::span<const std::optional<std::string>> titles);
std::string Substitute(const Document &doc,
                       std::span<const std::optional<std::string>> titles);

// Builds G from stage-2 predictions, one per mention in mention order.
GlobalContext BuildGlobalContext(const Document &doc,
                                 std::span<const Prediction> predictions);

struct Verdict {
  size_t mention_index = 0;
  bool passed = true;
  std::string explanation;
  bool unparseable = false;
};

// Reads a leading YES/NO word (case-insensitive) followed by an optional
// explanation. Anything else passes with unparseable set.
Verdict ParseVerdict(std::string_view completion);

// "* i. "surface" → title — description" block; the link at position
// `target` (into g.links) carries the "*" marker.
std::string FormatLinks(const GlobalContext &g, size_t target);

// One validation call per linked mention, in mention order.
std::vector<Verdict> ValidateAll(const Document &doc, const GlobalContext &g,
                                 LlmClient &llm, const PromptTemplate &tpl,
                                 const CompletionParams &params);

// Re-selection for a failed link, with the global context in the prompt.
// `target` indexes g.links. Same answer handling as Select.
Choice Reselect(const Document &doc, const GlobalContext &g, size_t target,
                std::string_view interpretation, const CandidateList &c_final,
                LlmClient &llm, const PromptTemplate &tpl,
                const CompletionParams &params);

}  // namespace elink

#endif  // ELINK_VALIDATE_H_
