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

#include "elink/candidates.h"

#include <algorithm>
#include <unordered_set>

#include "elink/error.h"
#include "elink/text.h"

namespace elink {

std::string_view CandidateSourceName(CandidateSource source) {
  switch (source) {
    case CandidateSource::kOriginal:
      return "original";
    case CandidateSource::kLlm:
      return "llm";
    case CandidateSource::kMerged:
      break;
  }
  return "merged";
}

bool CandidateList::Contains(std::string_view id) const {
  return PositionOf(id) != 0;
}

int CandidateList::PositionOf(std::string_view id) const {
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return static_cast<int>(i + 1);
  }
  return 0;
}

CandidateList LexicalRetriever::Retrieve(const KnowledgeBase &kb,
                                         std::string_view context,
                                         const Mention &mention,
                                         size_t k) const {
  CandidateList out;
  if (k == 0) return out;

  std::vector<std::string> exact = kb.LookupAlias(mention.surface);
  const std::vector<std::string> surface_tokens =
      text::TokenSet(mention.surface);
  const std::vector<std::string> context_tokens =
      text::ContentTokenSet(context);

  const auto &entities = kb.entities();
  for (size_t i = 0; i < entities.size(); ++i) {
    const Entity &e = entities[i];
    const EntityTerms &terms = kb.Terms(i);
    double alias;
    if (std::binary_search(exact.begin(), exact.end(), e.id)) {
      alias = 1.0;
    } else {
      alias = std::min(text::Jaccard(surface_tokens, terms.title),
                       kMaxPartialAlias);
    }
    double overlap = text::Jaccard(context_tokens, terms.description);
    double score = kAliasWeight * alias + kOverlapWeight * overlap;
    if (score <= 0.0) continue;
    out.items.push_back(Candidate{e.id, e.title, "", std::min(score, 1.0)});
  }

  // Entities are in id order, so a stable sort keeps ties by ascending id.
  std::stable_sort(
      out.items.begin(), out.items.end(),
      [](const Candidate &a, const Candidate &b) { return a.score > b.score; });
  if (out.items.size() > k) out.items.resize(k);
  return out;
}

std::unique_ptr<Retriever> MakeRetriever(std::string_view name) {
  if (name == "lexical") return std::make_unique<LexicalRetriever>();
  throw ConfigError("unknown retriever \"" + std::string(name) + "\"");
}

std::string Interpret(const Document &doc, size_t index, LlmClient &llm,
                      const PromptTemplate &tpl,
                      const CompletionParams &params) {
  const Mention &m = doc.mentions.at(index);
  TemplateVars vars{{"text", MarkedText(doc, index)}, {"mention", m.surface}};
  std::string prompt = Render(tpl, vars);
  std::string completion;
  try {
    completion = llm.Complete(params.MakeRequest(std::move(prompt)));
  } catch (const ScriptMissError &e) {
    throw ScriptMissError("interpret " + doc.doc_id + "#" +
                          std::to_string(index) + ": " + e.what());
  } catch (const TransportError &e) {
    throw TransportError("interpret " + doc.doc_id + "#" +
                         std::to_string(index) + ": " + e.what());
  }
  std::string trimmed = text::Trim(completion);
  return trimmed.empty() ? m.surface : trimmed;
}

CandidateList AttachDescriptions(const KnowledgeBase &kb, CandidateList list) {
  for (auto &c : list.items) c.description = kb.Description(c.id);
  return list;
}

CandidateList MergeCandidates(const CandidateList &original,
                              const CandidateList &llm, size_t cap) {
  CandidateList out;
  out.source = CandidateSource::kMerged;
  std::unordered_set<std::string> seen;
  size_t i = 0;
  size_t j = 0;
  // Advances `pos` past ids already taken; returns false when exhausted.
  auto take_next = [&](const CandidateList &from, size_t &pos) {
    while (pos < from.items.size()) {
      const Candidate &c = from.items[pos++];
      if (seen.insert(c.id).second) {
        out.items.push_back(c);
        return true;
      }
    }
    return false;
  };
  bool original_turn = true;
  while (out.items.size() < cap &&
         (i < original.items.size() || j < llm.items.size())) {
    if (original_turn) {
      take_next(original, i);
    } else {
      take_next(llm, j);
    }
    original_turn = !original_turn;
  }
  return out;
}

CandidateList Truncate(CandidateList list, size_t cap) {
  if (list.items.size() > cap) list.items.resize(cap);
  return list;
}

}  // namespace elink
