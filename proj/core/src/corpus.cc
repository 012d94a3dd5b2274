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

#include "elink/corpus.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "elink/error.h"
#include "elink/text.h"
#include "nlohmann/json.hpp"

namespace elink {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string MentionError(const Document &doc, size_t index,
                         const std::string &what) {
  return "document " + doc.doc_id + ", mention " + std::to_string(index) +
         ": " + what;
}

size_t ReadOffset(const json &m, const char *key, const std::string &where) {
  auto it = m.find(key);
  if (it == m.end() || !it->is_number_integer()) {
    throw DataError(where + ": missing or non-integer \"" + key + "\"");
  }
  long long v = it->get<long long>();
  if (v < 0) throw DataError(where + ": negative \"" + key + "\"");
  return static_cast<size_t>(v);
}

Document ParseDocumentLine(const std::string &line, size_t line_no) {
  std::string where = "line " + std::to_string(line_no);
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error &e) {
    throw DataError(where + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw DataError(where + ": expected object");
  Document doc;
  auto id = j.find("doc_id");
  auto text_it = j.find("text");
  if (id == j.end() || !id->is_string()) {
    throw DataError(where + ": missing or non-string \"doc_id\"");
  }
  if (text_it == j.end() || !text_it->is_string()) {
    throw DataError(where + ": missing or non-string \"text\"");
  }
  doc.doc_id = id->get<std::string>();
  doc.text = text_it->get<std::string>();
  if (auto ms = j.find("mentions"); ms != j.end() && !ms->is_null()) {
    if (!ms->is_array()) throw DataError(where + ": \"mentions\" not an array");
    for (size_t i = 0; i < ms->size(); ++i) {
      const json &m = (*ms)[i];
      std::string mwhere = where + ", mention " + std::to_string(i);
      if (!m.is_object()) throw DataError(mwhere + ": expected object");
      Mention mention;
      mention.start = ReadOffset(m, "start", mwhere);
      mention.end = ReadOffset(m, "end", mwhere);
      auto surface = m.find("surface");
      if (surface == m.end() || !surface->is_string()) {
        throw DataError(mwhere + ": missing or non-string \"surface\"");
      }
      mention.surface = surface->get<std::string>();
      if (auto gold = m.find("gold_id"); gold != m.end() && !gold->is_null()) {
        if (!gold->is_string()) {
          throw DataError(mwhere + ": \"gold_id\" must be a string or null");
        }
        mention.gold_id = gold->get<std::string>();
      }
      doc.mentions.push_back(std::move(mention));
    }
  }
  return doc;
}

ordered_json CandidatesToJson(const CandidateList &list) {
  ordered_json arr = ordered_json::array();
  for (const auto &c : list.items) {
    ordered_json item;
    item["id"] = c.id;
    item["title"] = c.title;
    item["score"] = c.score;
    arr.push_back(std::move(item));
  }
  return arr;
}

CandidateList CandidatesFromJson(const json &j, CandidateSource source,
                                 const char *key) {
  if (!j.is_array()) {
    throw DataError(std::string("prediction field \"") + key +
                    "\" must be an array");
  }
  CandidateList list;
  list.source = source;
  for (const auto &item : j) {
    Candidate c;
    c.id = item.at("id").get<std::string>();
    c.title = item.at("title").get<std::string>();
    c.score = item.at("score").get<double>();
    list.items.push_back(std::move(c));
  }
  return list;
}

Validation ParseValidation(const std::string &s) {
  if (s == "pass") return Validation::kPass;
  if (s == "fail") return Validation::kFail;
  if (s == "not_run") return Validation::kNotRun;
  throw DataError("unknown validation state \"" + s + "\"");
}

}  // namespace

void ValidateDocument(const Document &doc) {
  if (doc.doc_id.empty()) throw DataError("document with empty doc_id");
  if (!text::IsValidUtf8(doc.text)) {
    throw DataError("document " + doc.doc_id + ": text is not valid UTF-8");
  }
  for (size_t i = 0; i < doc.mentions.size(); ++i) {
    const Mention &m = doc.mentions[i];
    if (m.start >= m.end || m.end > doc.text.size()) {
      throw DataError(MentionError(
          doc, i,
          "span [" + std::to_string(m.start) + ", " + std::to_string(m.end) +
              ") out of range for text of " + std::to_string(doc.text.size()) +
              " bytes"));
    }
    if (!text::IsCharBoundary(doc.text, m.start) ||
        !text::IsCharBoundary(doc.text, m.end)) {
      throw DataError(MentionError(doc, i, "span splits a UTF-8 sequence"));
    }
    std::string_view slice(doc.text.data() + m.start, m.end - m.start);
    if (slice != m.surface) {
      throw DataError(MentionError(doc, i,
                                   "span mismatch: surface \"" + m.surface +
                                       "\" but text has \"" +
                                       std::string(slice) + "\""));
    }
    if (i > 0) {
      const Mention &prev = doc.mentions[i - 1];
      if (m.start < prev.start) {
        throw DataError(MentionError(doc, i, "mentions not sorted by start"));
      }
      if (m.start < prev.end) {
        throw DataError(MentionError(
            doc, i, "overlaps mention " + std::to_string(i - 1)));
      }
    }
  }
}

std::string MarkedText(const Document &doc, size_t index) {
  const Mention &m = doc.mentions.at(index);
  std::string out;
  out.reserve(doc.text.size() + 4);
  out.append(doc.text, 0, m.start);
  out.append("[[");
  out.append(doc.text, m.start, m.end - m.start);
  out.append("]]");
  out.append(doc.text, m.end, std::string::npos);
  return out;
}

std::vector<Document> LoadCorpus(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus " + path.string());
  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty()) continue;
    Document doc = ParseDocumentLine(line, line_no);
    ValidateDocument(doc);
    if (!ids.insert(doc.doc_id).second) {
      throw DataError("duplicate doc_id " + doc.doc_id + " (line " +
                      std::to_string(line_no) + ")");
    }
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw DataError("read failure on " + path.string());
  return docs;
}

void WriteCorpus(std::span<const Document> docs,
                 const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto &doc : docs) {
    ordered_json j;
    j["doc_id"] = doc.doc_id;
    j["text"] = doc.text;
    ordered_json ms = ordered_json::array();
    for (const auto &m : doc.mentions) {
      ordered_json mj;
      mj["start"] = m.start;
      mj["end"] = m.end;
      mj["surface"] = m.surface;
      mj["gold_id"] = m.gold_id ? ordered_json(*m.gold_id) : ordered_json();
      ms.push_back(std::move(mj));
    }
    j["mentions"] = std::move(ms);
    out << j.dump() << '\n';
  }
  if (!out) throw DataError("write failure on " + path.string());
}

std::string_view ValidationName(Validation v) {
  switch (v) {
    case Validation::kPass:
      return "pass";
    case Validation::kFail:
      return "fail";
    case Validation::kNotRun:
      break;
  }
  return "not_run";
}

void ValidatePrediction(const Prediction &p) {
  auto where = [&] {
    return "prediction " + p.doc_id + "#" + std::to_string(p.mention_index);
  };
  const int n = static_cast<int>(p.c_final.size());
  if (p.chosen_index < 0 || p.chosen_index > n) {
    throw DataError(where() + ": chosen_index out of range");
  }
  if (p.reselected_index) {
    if (p.validated != Validation::kFail) {
      throw DataError(where() + ": reselected_index without a failed verdict");
    }
    if (*p.reselected_index < 0 || *p.reselected_index > n) {
      throw DataError(where() + ": reselected_index out of range");
    }
  }
  const int effective = p.EffectiveIndex();
  if (effective == 0) {
    if (p.final_id) throw DataError(where() + ": final_id set for index 0");
  } else if (!p.final_id ||
             *p.final_id != p.c_final.items[effective - 1].id) {
    throw DataError(where() + ": final_id does not match c_final");
  }
}

std::string PredictionToJsonLine(const Prediction &p) {
  ordered_json j;
  j["doc_id"] = p.doc_id;
  j["mention_index"] = p.mention_index;
  j["interpretation"] = p.interpretation;
  j["c_original"] = CandidatesToJson(p.c_original);
  j["c_llm"] = CandidatesToJson(p.c_llm);
  j["c_final"] = CandidatesToJson(p.c_final);
  j["chosen_index"] = p.chosen_index;
  j["validated"] = std::string(ValidationName(p.validated));
  j["verdict_explanation"] = p.verdict_explanation;
  j["reselected_index"] =
      p.reselected_index ? ordered_json(*p.reselected_index) : ordered_json();
  j["final_id"] = p.final_id ? ordered_json(*p.final_id) : ordered_json();
  j["audit"] = p.audit;
  return j.dump();
}

Prediction PredictionFromJson(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
    Prediction p;
    p.doc_id = j.at("doc_id").get<std::string>();
    p.mention_index = j.at("mention_index").get<size_t>();
    p.interpretation = j.at("interpretation").get<std::string>();
    p.c_original = CandidatesFromJson(j.at("c_original"),
                                      CandidateSource::kOriginal, "c_original");
    p.c_llm = CandidatesFromJson(j.at("c_llm"), CandidateSource::kLlm, "c_llm");
    p.c_final =
        CandidatesFromJson(j.at("c_final"), CandidateSource::kMerged, "c_final");
    p.chosen_index = j.at("chosen_index").get<int>();
    p.validated = ParseValidation(j.at("validated").get<std::string>());
    p.verdict_explanation = j.value("verdict_explanation", "");
    if (auto r = j.find("reselected_index"); r != j.end() && !r->is_null()) {
      p.reselected_index = r->get<int>();
    }
    if (auto f = j.find("final_id"); f != j.end() && !f->is_null()) {
      p.final_id = f->get<std::string>();
    }
    if (auto a = j.find("audit"); a != j.end() && !a->is_null()) {
      p.audit = a->get<std::vector<std::string>>();
    }
    ValidatePrediction(p);
    return p;
  } catch (const json::exception &e) {
    throw DataError(std::string("malformed prediction: ") + e.what());
  }
}

void WritePredictions(std::span<const Prediction> preds,
                      const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto &p : preds) out << PredictionToJsonLine(p) << '\n';
  out.flush();
  if (!out) throw DataError("write failure on " + path.string());
}

std::vector<Prediction> LoadPredictions(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open predictions " + path.string());
  std::vector<Prediction> preds;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    try {
      preds.push_back(PredictionFromJson(line));
    } catch (const DataError &e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return preds;
}

}  // namespace elink
