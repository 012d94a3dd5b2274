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

#ifndef ELINK_CANDIDATES_H_
#define ELINK_CANDIDATES_H_

#include <memory>
#include <string>
#include <string_view>

#include "elink/candidate.h"
#include "elink/corpus.h"
#include "elink/kb.h"
#include "elink/llm.h"
#include "elink/template.h"

namespace elink {

// Candidate retriever contract. Retrieve returns at most k candidates with
// positive scores in [0, 1], sorted by descending score with ties broken by
// ascending id. Results depend only on the arguments. Descriptions are left
// empty; see AttachDescriptions.
class Retriever {
 public:
  virtual ~Retriever() = default;
  virtual std::string_view name() const = 0;
  virtual CandidateList Retrieve(const KnowledgeBase &kb,
                                 std::string_view context,
                                 const Mention &mention, size_t k) const = 0;
};

// Lexical stand-in for a dense bi-encoder:
//
//   score = 0.7 * alias + 0.3 * overlap
//
// alias is 1 for an exact normalized title/alias match, else the token
// Jaccard between surface and title capped at 0.99. overlap is the
// content-token Jaccard between the context and the entity description.
// Any exact alias match (score >= 0.7) strictly outranks any entity matched
// only through context (score <= 0.3).
class LexicalRetriever : public Retriever {
 public:
  static constexpr double kAliasWeight = 0.7;
  static constexpr double kOverlapWeight = 0.3;
  static constexpr double kMaxPartialAlias = 0.99;

  std::string_view name() const override { return "lexical"; }
  CandidateList Retrieve(const KnowledgeBase &kb, std::string_view context,
                         const Mention &mention, size_t k) const override;
};

// Retriever registry. Throws ConfigError for unknown names.
std::unique_ptr<Retriever> MakeRetriever(std::string_view name);

// Asks the LLM for a contextual interpretation of mention `index`. An empty
// completion falls back to the mention surface. Transport errors are
// rethrown with the doc id and mention index.
std::string Interpret(const Document &doc, size_t index, LlmClient &llm,
                      const PromptTemplate &tpl,
                      const CompletionParams &params);

// Fills each candidate's description from the KB. Throws LookupError for
// ids the KB does not know.
CandidateList AttachDescriptions(const KnowledgeBase &kb, CandidateList list);

// Round-robin interleave starting with `original`: each turn takes the next
// id of that source not yet included, until both are exhausted or `cap`
// items are collected.
CandidateList MergeCandidates(const CandidateList &original,
                              const CandidateList &llm, size_t cap);

CandidateList Truncate(CandidateList list, size_t cap);

}  // namespace elink

#endif  // ELINK_CANDIDATES_H_
