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

#ifndef ELINK_EVAL_H_
#define ELINK_EVAL_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elink/config.h"
#include "elink/corpus.h"
#include "elink/kb.h"
#include "elink/pipeline.h"

namespace elink {

// In-KB micro-averaged counts. Only mentions whose gold id is in the KB are
// counted. A wrong non-NIL prediction is both a false positive and a false
// negative; a NIL prediction is a false negative only.
struct Metrics {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t n_gold_in_kb = 0;
  size_t n_gold_out_kb = 0;
};

// Fills precision, recall and f1 from the counts (0/0 is 0).
void FinalizeMetrics(Metrics &m);

// Predictions are matched to gold mentions by (doc_id, mention_index). A
// gold mention without a prediction counts as NIL. Throws DataError for
// predictions naming an unknown document or mention, or duplicates.
Metrics MicroF1InKb(std::span<const Prediction> preds,
                    std::span<const Document> docs, const KnowledgeBase &kb);

enum class ErrorCategory { kExpand, kNarrow, kNoAnswer, kOtherMismatch };

std::string_view ErrorCategoryName(ErrorCategory c);

// Token-containment classification of one error. NIL is no_answer; a
// predicted title whose token set strictly contains the gold title's is
// narrow; strictly contained is expand; anything else is other_mismatch.
// Semantic containment (a city inside its country) is not detected.
ErrorCategory CategorizeError(std::string_view gold_title,
                              std::optional<std::string_view> predicted_title);

struct MentionError {
  std::string doc_id;
  size_t mention_index = 0;
  std::string surface;
  std::string gold_id;
  std::optional<std::string> final_id;
  ErrorCategory category = ErrorCategory::kOtherMismatch;
};

struct ErrorReport {
  std::map<ErrorCategory, size_t> counts;  // every category present
  std::vector<MentionError> mentions;      // corpus order
};

// Labels every in-KB gold mention whose prediction is not the gold entity.
// Incorrect ground truth is never assigned automatically; every labeled
// error is eligible for manual review.
ErrorReport CategorizeErrors(std::span<const Prediction> preds,
                             std::span<const Document> docs,
                             const KnowledgeBase &kb);

// {"mode", "metrics", "errors", "per_mention"} report document.
std::string ReportJson(std::string_view mode, const Metrics &metrics,
                       const ErrorReport &errors);

std::string FormatMetricsTable(
    std::span<const std::pair<std::string, Metrics>> rows);

struct AblationRow {
  Mode mode;
  Metrics metrics;
  ErrorReport errors;
};

using ClientFactory = std::function<std::unique_ptr<LlmClient>()>;

// Runs each mode over the same corpus, with a fresh client from `factory`
// per mode so scripted backends start from the same state.
std::vector<AblationRow> Ablate(const KnowledgeBase &kb,
                                std::span<const Document> docs,
                                const Retriever &retriever,
                                const ClientFactory &factory,
                                const PromptSet &prompts,
                                const PipelineOptions &base,
                                std::span<const Mode> modes);

// Loads the KB, corpus, prompts and backend named by the config.
std::vector<AblationRow> Ablate(const PipelineConfig &config,
                                std::span<const Mode> modes);

std::string AblationJson(std::span<const AblationRow> rows);

}  // namespace elink

#endif  // ELINK_EVAL_H_
