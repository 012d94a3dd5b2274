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

#ifndef ELINK_PIPELINE_H_
#define ELINK_PIPELINE_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "elink/candidates.h"
#include "elink/config.h"
#include "elink/corpus.h"
#include "elink/kb.h"
#include "elink/llm.h"
#include "elink/template.h"

namespace elink {

// Hooks for instrumenting stage 3. Calls may arrive from several worker
// threads; implementations synchronize themselves.
class PipelineObserver {
 public:
  virtual ~PipelineObserver() = default;
  virtual void OnValidationRound(const Document & /*doc*/) {}
  virtual void OnVerdict(const Document & /*doc*/, size_t /*mention_index*/,
                         bool /*passed*/) {}
  virtual void OnReselect(const Document & /*doc*/, size_t /*mention_index*/,
                          int /*index*/) {}
  virtual void OnDocumentDone(const Document & /*doc*/,
                              std::span<const Prediction> /*preds*/) {}
};

struct PipelineOptions {
  Mode mode = Mode::kFull;
  size_t k_per_source = 10;
  size_t cap = 10;
  int workers = 1;
  CompletionParams completion;
};

// Three-stage linker: interpretation and dual-source candidate generation,
// multiple-choice selection, then one round of global validation with
// re-selection of failed links.
//
// Documents are processed by a pool of `workers` threads; each document's
// mentions run in order and stage 3 starts only after all of its stage-2
// results exist. Output order is corpus order, then mention order.
class Pipeline {
 public:
  Pipeline(const KnowledgeBase &kb, const Retriever &retriever,
           LlmClient &llm, PromptSet prompts, PipelineOptions options,
           PipelineObserver *observer = nullptr);

  // Links every mention of every document. Transport errors abort the run;
  // parse failures are recorded per mention.
  std::vector<Prediction> Run(std::span<const Document> docs) const;

  std::vector<Prediction> LinkDocument(const Document &doc) const;

 private:
  Prediction LinkMention(const Document &doc, size_t index) const;
  void ValidateDocument(const Document &doc,
                        std::vector<Prediction> &preds) const;

  const KnowledgeBase &kb_;
  const Retriever &retriever_;
  LlmClient &llm_;
  PromptSet prompts_;
  PipelineOptions options_;
  PipelineObserver *observer_;
};

// Backend factory for a config: the scripted mock or the HTTP client (key
// from the environment variable named by api_key_env).
std::unique_ptr<LlmClient> MakeClient(const PipelineConfig &config);

PromptSet LoadPrompts(const PipelineConfig &config);
PipelineOptions OptionsFromConfig(const PipelineConfig &config);

// Loads the KB and corpus named by the config and runs the pipeline.
std::vector<Prediction> Run(const PipelineConfig &config);

}  // namespace elink

#endif  // ELINK_PIPELINE_H_
