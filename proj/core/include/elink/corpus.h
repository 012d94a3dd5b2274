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

#ifndef ELINK_CORPUS_H_
#define ELINK_CORPUS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elink/candidate.h"

namespace elink {

// A mention span. Offsets are byte offsets into the UTF-8 document text;
// `end` is exclusive.
struct Mention {
  size_t start = 0;
  size_t end = 0;
  std::string surface;
  std::optional<std::string> gold_id;

  bool operator==(const Mention &other) const = default;
};

// A document with sorted, non-overlapping mentions.
struct Document {
  std::string doc_id;
  std::string text;
  std::vector<Mention> mentions;

  bool operator==(const Document &other) const = default;
};

// Checks document invariants: non-empty id, valid UTF-8, spans in range and
// on character boundaries, surfaces equal to their slices, mentions sorted
// and non-overlapping. Throws DataError naming the doc id and mention index.
void ValidateDocument(const Document &doc);

// The document text with mention `index` enclosed in "[[" and "]]".
std::string MarkedText(const Document &doc, size_t index);

// Loads a corpus JSONL file. Doc ids must be unique.
std::vector<Document> LoadCorpus(const std::filesystem::path &path);
void WriteCorpus(std::span<const Document> docs,
                 const std::filesystem::path &path);

enum class Validation { kNotRun, kPass, kFail };

std::string_view ValidationName(Validation v);

// Per-mention pipeline outcome with its full stage trace. Option indices
// are 1-based positions in c_final; 0 means no entity (NIL).
struct Prediction {
  std::string doc_id;
  size_t mention_index = 0;
  std::string interpretation;
  CandidateList c_original;
  CandidateList c_llm;
  CandidateList c_final;
  int chosen_index = 0;
  Validation validated = Validation::kNotRun;
  std::string verdict_explanation;
  std::optional<int> reselected_index;  // only when validated == kFail
  std::optional<std::string> final_id;  // nullopt is NIL
  std::vector<std::string> audit;

  int EffectiveIndex() const { return reselected_index.value_or(chosen_index); }

  bool operator==(const Prediction &other) const = default;
};

// Throws DataError if the index and final_id fields disagree with c_final.
void ValidatePrediction(const Prediction &pred);

// One JSON object per line with a fixed field order. Candidate lists are
// written as arrays of {"id", "title", "score"}; descriptions are not
// persisted and load back empty.
std::string PredictionToJsonLine(const Prediction &pred);
Prediction PredictionFromJson(std::string_view line);

void WritePredictions(std::span<const Prediction> preds,
                      const std::filesystem::path &path);
std::vector<Prediction> LoadPredictions(const std::filesystem::path &path);

}  // namespace elink

#endif  // ELINK_CORPUS_H_
