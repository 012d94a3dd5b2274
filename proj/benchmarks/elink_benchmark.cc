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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "elink/candidates.h"
#include "elink/disambig.h"
#include "elink/pipeline.h"

namespace elink {
namespace {

std::string Word(std::mt19937 &rng) {
  static const char *kSyllables[] = {"ka", "ro", "vi", "len", "dor", "mi",
                                     "sa", "tu", "bel", "gra", "no", "phi"};
  std::string w;
  for (int i = 0; i < 3; ++i) w += kSyllables[rng() % 12];
  return w;
}

// n entities in groups of four sharing a name.
KnowledgeBase SyntheticKb(size_t n) {
  std::mt19937 rng(1);
  std::vector<Entity> entities;
  const char *kinds[] = {"river", "band", "city", "ship"};
  std::string name;
  for (size_t i = 0; i < n; ++i) {
    if (i % 4 == 0) name = Word(rng);
    Entity e;
    e.id = "E" + std::to_string(100000 + i);
    e.title = name + " (" + kinds[i % 4] + ")";
    e.description = std::string(kinds[i % 4]) + " " + Word(rng) + " " +
                    Word(rng) + " " + Word(rng);
    e.aliases = {name};
    entities.push_back(std::move(e));
  }
  return KnowledgeBase::FromEntities(std::move(entities));
}

CandidateList RandomList(std::mt19937 &rng, size_t n) {
  CandidateList list;
  for (size_t i = 0; i < n; ++i) {
    list.items.push_back({"Q" + std::to_string(rng() % 30), "t", "", 1.0});
  }
  return list;
}

void BM_MergeCandidates(benchmark::State &state) {
  std::mt19937 rng(2);
  CandidateList a = RandomList(rng, 10);
  CandidateList b = RandomList(rng, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MergeCandidates(a, b, 10));
  }
}
BENCHMARK(BM_MergeCandidates);

void BM_LexicalRetrieve(benchmark::State &state) {
  KnowledgeBase kb = SyntheticKb(static_cast<size_t>(state.range(0)));
  const Entity &target = kb.entities()[kb.size() / 2];
  Mention m{0, target.aliases[0].size(), target.aliases[0], std::nullopt};
  std::string context = target.aliases[0] + " " + target.description;
  LexicalRetriever retriever;
  for (auto _ : state) {
    benchmark::DoNotOptimize(retriever.Retrieve(kb, context, m, 10));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LexicalRetrieve)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ParseChoice(benchmark::State &state) {
  const std::string completion =
      "Looking at the context, the mention refers to the company, so I pick "
      "option 4 because the text discusses products.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(ParseChoice(completion, 10));
  }
}
BENCHMARK(BM_ParseChoice);

// Whole pipeline over a mock backend; measures everything except the LLM.
void BM_PipelineMock(benchmark::State &state) {
  KnowledgeBase kb = SyntheticKb(4000);
  std::vector<Document> docs;
  for (size_t d = 0; d < 50; ++d) {
    const Entity &a = kb.entities()[(d * 37) % kb.size()];
    const Entity &b = kb.entities()[(d * 53 + 11) % kb.size()];
    Document doc;
    doc.doc_id = "doc" + std::to_string(d);
    doc.text = a.aliases[0] + " met " + b.aliases[0] + ".";
    doc.mentions.push_back({0, a.aliases[0].size(), a.aliases[0], a.id});
    size_t start = a.aliases[0].size() + 5;
    doc.mentions.push_back(
        {start, start + b.aliases[0].size(), b.aliases[0], b.id});
    docs.push_back(std::move(doc));
  }
  MockClient llm(std::vector<MockClient::Entry>{
      {"Task: interpret", "a river in the north"},
      {"Task: disambiguate", "1"},
      {"Task: validate", "YES"},
      {"Task: reselect", "1"}});
  LexicalRetriever retriever;
  PipelineOptions options;
  options.workers = static_cast<int>(state.range(0));
  Pipeline pipeline(kb, retriever, llm, PromptSet::Builtin(), options);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.Run(docs));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_PipelineMock)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
}  // namespace elink

BENCHMARK_MAIN();
