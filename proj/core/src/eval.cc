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

#include "elink/eval.h"

#include <cstdio>
#include <map>
#include <sstream>

#include "elink/error.h"
#include "elink/text.h"
#include "nlohmann/json.hpp"

namespace elink {
namespace {

using nlohmann::ordered_json;

using PredictionIndex =
    std::map<std::pair<std::string_view, size_t>, const Prediction *>;

PredictionIndex IndexPredictions(std::span<const Prediction> preds,
                                 std::span<const Document> docs) {
  std::map<std::string_view, const Document *> by_id;
  for (const auto &d : docs) by_id.emplace(d.doc_id, &d);
  PredictionIndex index;
  for (const auto &p : preds) {
    auto doc = by_id.find(p.doc_id);
    if (doc == by_id.end()) {
      throw DataError("prediction for unknown document " + p.doc_id);
    }
    if (p.mention_index >= doc->second->mentions.size()) {
      throw DataError("prediction for unknown mention " + p.doc_id + "#" +
                      std::to_string(p.mention_index));
    }
    if (!index.emplace(std::make_pair(std::string_view(p.doc_id),
                                      p.mention_index),
                       &p)
             .second) {
      throw DataError("duplicate prediction for " + p.doc_id + "#" +
                      std::to_string(p.mention_index));
    }
  }
  return index;
}

const std::optional<std::string> &FinalId(const PredictionIndex &index,
                                          const Document &doc, size_t i) {
  static const std::optional<std::string> kNil;
  auto it = index.find({std::string_view(doc.doc_id), i});
  return it == index.end() ? kNil : it->second->final_id;
}

ordered_json MetricsToJson(const Metrics &m) {
  ordered_json j;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["fn"] = m.fn;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["n_gold_in_kb"] = m.n_gold_in_kb;
  j["n_gold_out_kb"] = m.n_gold_out_kb;
  return j;
}

ordered_json ReportToJson(std::string_view mode, const Metrics &metrics,
                          const ErrorReport &errors) {
  ordered_json j;
  j["mode"] = std::string(mode);
  j["metrics"] = MetricsToJson(metrics);
  ordered_json counts;
  for (ErrorCategory c :
       {ErrorCategory::kExpand, ErrorCategory::kNarrow,
        ErrorCategory::kNoAnswer, ErrorCategory::kOtherMismatch}) {
    auto it = errors.counts.find(c);
    counts[std::string(ErrorCategoryName(c))] =
        it == errors.counts.end() ? 0 : it->second;
  }
  j["errors"] = std::move(counts);
  ordered_json per_mention = ordered_json::array();
  for (const auto &e : errors.mentions) {
    ordered_json m;
    m["doc_id"] = e.doc_id;
    m["mention_index"] = e.mention_index;
    m["surface"] = e.surface;
    m["gold_id"] = e.gold_id;
    m["final_id"] = e.final_id ? ordered_json(*e.final_id) : ordered_json();
    m["category"] = std::string(ErrorCategoryName(e.category));
    // Unreviewed: incorrect ground truth is only ever set by a person.
    m["gt_incorrect"] = nullptr;
    m["manual_review"] = true;
    per_mention.push_back(std::move(m));
  }
  j["per_mention"] = std::move(per_mention);
  return j;
}

std::string Fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void FinalizeMetrics(Metrics &m) {
  const double tp = static_cast<double>(m.tp);
  m.precision = m.tp + m.fp == 0 ? 0.0 : tp / static_cast<double>(m.tp + m.fp);
  m.recall = m.tp + m.fn == 0 ? 0.0 : tp / static_cast<double>(m.tp + m.fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
}

Metrics MicroF1InKb(std::span<const Prediction> preds,
                    std::span<const Document> docs, const KnowledgeBase &kb) {
  const PredictionIndex index = IndexPredictions(preds, docs);
  Metrics m;
  for (const auto &doc : docs) {
    for (size_t i = 0; i < doc.mentions.size(); ++i) {
      const auto &gold = doc.mentions[i].gold_id;
      if (!gold) continue;
      if (!kb.Contains(*gold)) {
        ++m.n_gold_out_kb;
        continue;
      }
      ++m.n_gold_in_kb;
      const auto &predicted = FinalId(index, doc, i);
      if (predicted == gold) {
        ++m.tp;
        continue;
      }
      ++m.fn;
      if (predicted) ++m.fp;
    }
  }
  FinalizeMetrics(m);
  return m;
}

std::string_view ErrorCategoryName(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kExpand:
      return "expand";
    case ErrorCategory::kNarrow:
      return "narrow";
    case ErrorCategory::kNoAnswer:
      return "no_answer";
    case ErrorCategory::kOtherMismatch:
      break;
  }
  return "other_mismatch";
}

ErrorCategory CategorizeError(std::string_view gold_title,
                              std::optional<std::string_view> predicted_title) {
  if (!predicted_title) return ErrorCategory::kNoAnswer;
  const auto gold = text::TokenSet(gold_title);
  const auto predicted = text::TokenSet(*predicted_title);
  if (gold != predicted) {
    if (text::IsSubset(gold, predicted)) return ErrorCategory::kNarrow;
    if (text::IsSubset(predicted, gold)) return ErrorCategory::kExpand;
  }
  return ErrorCategory::kOtherMismatch;
}

ErrorReport CategorizeErrors(std::span<const Prediction> preds,
                             std::span<const Document> docs,
                             const KnowledgeBase &kb) {
  const PredictionIndex index = IndexPredictions(preds, docs);
  ErrorReport report;
  for (ErrorCategory c :
       {ErrorCategory::kExpand, ErrorCategory::kNarrow,
        ErrorCategory::kNoAnswer, ErrorCategory::kOtherMismatch}) {
    report.counts[c] = 0;
  }
  for (const auto &doc : docs) {
    for (size_t i = 0; i < doc.mentions.size(); ++i) {
      const Mention &mention = doc.mentions[i];
      if (!mention.gold_id) continue;
      const Entity *gold = kb.Find(*mention.gold_id);
      if (gold == nullptr) continue;
      const auto &predicted = FinalId(index, doc, i);
      if (predicted == mention.gold_id) continue;

      std::optional<std::string_view> predicted_title;
      if (predicted) {
        const Entity *e = kb.Find(*predicted);
        predicted_title = e ? std::string_view(e->title)
                            : std::string_view(*predicted);
      }
      ErrorCategory category = CategorizeError(gold->title, predicted_title);
      ++report.counts[category];
      report.mentions.push_back(MentionError{doc.doc_id, i, mention.surface,
                                             gold->id, predicted, category});
    }
  }
  return report;
}

std::string ReportJson(std::string_view mode, const Metrics &metrics,
                       const ErrorReport &errors) {
  return ReportToJson(mode, metrics, errors).dump(2) + "\n";
}

std::string FormatMetricsTable(
    std::span<const std::pair<std::string, Metrics>> rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %6s %6s %6s %9s %9s %9s\n", "mode",
                "tp", "fp", "fn", "precision", "recall", "f1");
  out << line;
  for (const auto &[name, m] : rows) {
    std::snprintf(line, sizeof(line), "%-16s %6zu %6zu %6zu %9s %9s %9s\n",
                  name.c_str(), m.tp, m.fp, m.fn, Fixed4(m.precision).c_str(),
                  Fixed4(m.recall).c_str(), Fixed4(m.f1).c_str());
    out << line;
  }
  return out.str();
}

std::vector<AblationRow> Ablate(const KnowledgeBase &kb,
                                std::span<const Document> docs,
                                const Retriever &retriever,
                                const ClientFactory &factory,
                                const PromptSet &prompts,
                                const PipelineOptions &base,
                                std::span<const Mode> modes) {
  std::vector<AblationRow> rows;
  for (Mode mode : modes) {
    PipelineOptions options = base;
    options.mode = mode;
    std::unique_ptr<LlmClient> client = factory();
    Pipeline pipeline(kb, retriever, *client, prompts, options);
    std::vector<Prediction> preds = pipeline.Run(docs);
    rows.push_back(AblationRow{mode, MicroF1InKb(preds, docs, kb),
                               CategorizeErrors(preds, docs, kb)});
  }
  return rows;
}

std::vector<AblationRow> Ablate(const PipelineConfig &config,
                                std::span<const Mode> modes) {
  config.Validate();
  if (config.kb_path.empty()) throw ConfigError("kb_path is not set");
  if (config.corpus_path.empty()) throw ConfigError("corpus_path is not set");
  auto retriever = MakeRetriever(config.retriever);
  PromptSet prompts = LoadPrompts(config);
  KnowledgeBase kb = KnowledgeBase::Load(config.kb_path);
  std::vector<Document> docs = LoadCorpus(config.corpus_path);
  return Ablate(kb, docs, *retriever, [&] { return MakeClient(config); },
                prompts, OptionsFromConfig(config), modes);
}

std::string AblationJson(std::span<const AblationRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto &row : rows) {
    arr.push_back(ReportToJson(ModeName(row.mode), row.metrics, row.errors));
  }
  return arr.dump(2) + "\n";
}

}  // namespace elink
