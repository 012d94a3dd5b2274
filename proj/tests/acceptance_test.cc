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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "elink/candidates.h"
#include "elink/disambig.h"
#include "elink/eval.h"
#include "elink/pipeline.h"
#include "fixture_world.h"

namespace elink {
namespace {

using testing::MakeWorld;
using testing::OracleClient;
using testing::World;

// Collects failed checks for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  bool ok() const { return !failed_; }
  std::string Summary() const {
    std::string s;
    for (const auto &f : failures_) s += "\n      " + f;
    return s;
  }
  std::string detail;

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

std::vector<Prediction> RunMode(const World &world, Mode mode, LlmClient &llm,
                                PipelineObserver *observer = nullptr,
                                int workers = 1) {
  LexicalRetriever retriever;
  PipelineOptions options;
  options.mode = mode;
  options.workers = workers;
  Pipeline pipeline(world.kb, retriever, llm, PromptSet::Builtin(), options,
                    observer);
  return pipeline.Run(world.docs);
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

Check OracleEndToEnd() {
  Check c;
  auto begin = std::chrono::steady_clock::now();
  World world = MakeWorld({});
  OracleClient oracle(world);
  auto preds = RunMode(world, Mode::kFull, oracle);
  Metrics m = MicroF1InKb(preds, world.docs, world.kb);
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - begin)
                       .count();
  c.Expect(world.mention_count() >= 50, "fewer than 50 mentions");
  c.Expect(world.kb.size() >= 200, "KB smaller than 200 entities");
  c.Expect(preds.size() == world.mention_count(), "prediction count");
  for (size_t i = 0; i < preds.size() && i < world.truths.size(); ++i) {
    c.Expect(preds[i].c_final.Contains(world.truths[i].gold_id),
             "gold missing from C_final at " + world.truths[i].doc_id);
    c.Expect(preds[i].validated == Validation::kPass, "verdict not passed");
  }
  c.Expect(m.f1 == 1.0, "f1 = " + Fmt(m.f1));
  c.Expect(seconds < 5.0, "runtime " + Fmt(seconds) + " s");
  c.detail = std::to_string(world.mention_count()) + " mentions, " +
             std::to_string(world.kb.size()) + " entities, f1=" + Fmt(m.f1) +
             ", " + Fmt(seconds) + " s";
  return c;
}

Check ControlledRecovery() {
  Check c;
  World world = MakeWorld({.planted = 5});
  OracleClient full_llm(world), noval_llm(world);
  auto full = RunMode(world, Mode::kFull, full_llm);
  auto noval = RunMode(world, Mode::kNoValidation, noval_llm);
  size_t planted = 0, failed = 0, recovered = 0, wrong_noval = 0;
  for (size_t i = 0; i < world.truths.size(); ++i) {
    const auto &t = world.truths[i];
    planted += t.planted;
    bool failed_here = full[i].validated == Validation::kFail;
    failed += failed_here;
    c.Expect(failed_here == t.planted,
             "validator verdict mismatch at " + t.doc_id + "#" +
                 std::to_string(t.index));
    if (t.planted) {
      recovered += full[i].final_id == t.gold_id;
      wrong_noval += noval[i].final_id != t.gold_id;
    }
  }
  Metrics mf = MicroF1InKb(full, world.docs, world.kb);
  Metrics mv = MicroF1InKb(noval, world.docs, world.kb);
  c.Expect(planted == 5, "planted " + std::to_string(planted));
  c.Expect(failed == 5, "failed verdicts " + std::to_string(failed));
  c.Expect(recovered == 5, "recovered " + std::to_string(recovered));
  c.Expect(wrong_noval == 5, "no_validation wrong " +
                                 std::to_string(wrong_noval));
  c.Expect(mf.f1 > mv.f1, "f1 full " + Fmt(mf.f1) + " <= no_validation " +
                              Fmt(mv.f1));
  c.detail = "planted 5, failed " + std::to_string(failed) + ", recovered " +
             std::to_string(recovered) + "; f1 full=" + Fmt(mf.f1) +
             " no_validation=" + Fmt(mv.f1);
  return c;
}

Check DescriptionLeg() {
  Check c;
  World world = MakeWorld({.hidden = 5});
  OracleClient full_llm(world), node_llm(world);
  auto full = RunMode(world, Mode::kFull, full_llm);
  auto node = RunMode(world, Mode::kNoDescription, node_llm);
  size_t hidden = 0, found_full = 0, found_node = 0;
  for (size_t i = 0; i < world.truths.size(); ++i) {
    const auto &t = world.truths[i];
    if (!t.hidden) continue;
    ++hidden;
    // Reachable only through the interpretation.
    c.Expect(!full[i].c_original.Contains(t.gold_id),
             "hidden gold retrieved from T at " + t.doc_id);
    c.Expect(full[i].c_llm.Contains(t.gold_id),
             "hidden gold not retrieved from I at " + t.doc_id);
    found_full += full[i].final_id == t.gold_id;
    found_node += node[i].final_id == t.gold_id;
  }
  Metrics mf = MicroF1InKb(full, world.docs, world.kb);
  Metrics mn = MicroF1InKb(node, world.docs, world.kb);
  c.Expect(hidden == 5, "hidden " + std::to_string(hidden));
  c.Expect(found_full == 5, "full linked " + std::to_string(found_full));
  c.Expect(found_node == 0, "no_description linked " +
                                std::to_string(found_node));
  c.Expect(mf.f1 > mn.f1, "f1 full " + Fmt(mf.f1) + " <= no_description " +
                              Fmt(mn.f1));
  c.detail = "5 interpretation-only golds; f1 full=" + Fmt(mf.f1) +
             " no_description=" + Fmt(mn.f1);
  return c;
}

CandidateList IdList(const std::vector<std::string> &ids) {
  CandidateList list;
  double score = 1.0;
  for (const auto &id : ids) {
    list.items.push_back({id, id, "", score});
    score -= 0.01;
  }
  return list;
}

std::vector<std::string> Ids(const CandidateList &list) {
  std::vector<std::string> out;
  for (const auto &c : list.items) out.push_back(c.id);
  return out;
}

Check MergeLaws() {
  Check c;
  std::mt19937 rng(4242);
  auto random_ids = [&] {
    std::vector<std::string> pool;
    for (int i = 0; i < 20; ++i) pool.push_back("Q" + std::to_string(i));
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(rng() % 11);
    return pool;
  };
  const size_t kCases = 1000;
  for (size_t n = 0; n < kCases; ++n) {
    auto x = random_ids();
    auto y = random_ids();
    auto out = Ids(MergeCandidates(IdList(x), IdList(y), 10));
    std::set<std::string> unique(out.begin(), out.end());
    std::set<std::string> universe(x.begin(), x.end());
    universe.insert(y.begin(), y.end());
    std::string tag = " (case " + std::to_string(n) + ")";
    c.Expect(out.size() <= 10, "cap exceeded" + tag);
    c.Expect(unique.size() == out.size(), "duplicate id" + tag);
    c.Expect(std::includes(universe.begin(), universe.end(), unique.begin(),
                           unique.end()),
             "id outside the union" + tag);
    c.Expect(out.size() == std::min<size_t>(10, universe.size()),
             "merge dropped ids under the cap" + tag);
    if (!x.empty()) c.Expect(out.front() == x.front(), "top-1 not first" + tag);
    c.Expect(Ids(MergeCandidates(IdList(x), CandidateList(), 10)) ==
                 Ids(Truncate(IdList(x), 10)),
             "merge(x, empty) != truncate(x)" + tag);
    c.Expect(Ids(MergeCandidates(CandidateList(), IdList(y), 10)) ==
                 Ids(Truncate(IdList(y), 10)),
             "merge(empty, y) != truncate(y)" + tag);
  }
  c.detail = std::to_string(kCases) + " random cases";
  return c;
}

Check MetricOracle() {
  Check c;
  std::vector<Entity> entities;
  for (int i = 0; i < 11; ++i) {
    entities.push_back({"G" + std::to_string(i), "T" + std::to_string(i), "d", {}});
  }
  KnowledgeBase kb = KnowledgeBase::FromEntities(entities);
  Document doc;
  doc.doc_id = "d";
  std::vector<Prediction> preds;
  for (int i = 0; i < 10; ++i) {
    size_t start = doc.text.size();
    doc.text += "m ";
    doc.mentions.push_back({start, start + 1, "m", "G" + std::to_string(i)});
    Prediction p;
    p.doc_id = "d";
    p.mention_index = i;
    if (i < 8) p.final_id = "G" + std::to_string(i);
    if (i == 8) p.final_id = "G10";
    preds.push_back(p);
  }
  std::vector<Document> docs = {doc};
  Metrics m = MicroF1InKb(preds, docs, kb);
  c.Expect(std::fabs(m.precision - 8.0 / 9.0) <= 1e-12, "precision " + Fmt(m.precision));
  c.Expect(std::fabs(m.recall - 0.8) <= 1e-12, "recall " + Fmt(m.recall));
  c.Expect(std::fabs(m.f1 - 128.0 / 152.0) <= 1e-12, "f1 " + Fmt(m.f1));

  std::mt19937 rng(77);
  const size_t kTrials = 500;
  for (size_t t = 0; t < kTrials; ++t) {
    std::vector<Document> fuzzed = docs;
    std::vector<Prediction> fp = preds;
    size_t extra = 1 + rng() % 6;
    for (size_t k = 0; k < extra; ++k) {
      Document &d = fuzzed[0];
      size_t start = d.text.size();
      d.text += "x ";
      d.mentions.push_back({start, start + 1, "x", "OUT" + std::to_string(rng() % 3)});
      Prediction p;
      p.doc_id = "d";
      p.mention_index = d.mentions.size() - 1;
      int r = rng() % 3;
      if (r == 0) p.final_id = "G" + std::to_string(rng() % 11);
      if (r != 2) fp.push_back(p);
    }
    std::shuffle(fp.begin(), fp.end(), rng);
    Metrics f = MicroF1InKb(fp, fuzzed, kb);
    c.Expect(f.tp == m.tp && f.fp == m.fp && f.fn == m.fn && f.f1 == m.f1 &&
                 f.n_gold_in_kb == 10 && f.n_gold_out_kb == extra,
             "out-of-KB gold changed a count in trial " + std::to_string(t));
  }
  c.detail = "p=" + Fmt(m.precision) + " r=" + Fmt(m.recall) + " f1=" +
             Fmt(m.f1) + "; " + std::to_string(kTrials) + " out-of-KB fuzz trials";
  return c;
}

// Mock backend fixture run twice through the config-driven entry point.
Check Determinism() {
  Check c;
  testing::TempDir dir;
  World world = MakeWorld({.planted = 3, .hidden = 3});
  testing::WriteWorld(world, dir.path());
  testing::WriteFile(dir / "mock.jsonl",
                     "{\"match\": \"Task: interpret\", \"response\": "
                     "\"freshwater river crossing lowlands\"}\n"
                     "{\"match\": \"Task: disambiguate\", \"response\": \"2\"}\n"
                     "{\"match\": \"* 1.\", \"response\": \"NO, not this one\"}\n"
                     "{\"match\": \"Task: validate\", \"response\": \"YES\"}\n"
                     "{\"match\": \"Task: reselect\", \"response\": \"1\"}\n");
  PipelineConfig config;
  config.kb_path = (dir / "kb.jsonl").string();
  config.corpus_path = (dir / "corpus.jsonl").string();
  config.backend = "mock";
  config.mock_script = (dir / "mock.jsonl").string();
  config.max_in_flight = 4;
  std::vector<std::string> pred_files, report_files;
  for (int run = 0; run < 2; ++run) {
    std::vector<Prediction> preds = Run(config);
    auto pred_path = dir / ("preds" + std::to_string(run) + ".jsonl");
    auto report_path = dir / ("report" + std::to_string(run) + ".json");
    WritePredictions(preds, pred_path);
    Metrics m = MicroF1InKb(preds, world.docs, world.kb);
    testing::WriteFile(report_path,
                       ReportJson("full", m, CategorizeErrors(preds, world.docs,
                                                              world.kb)));
    pred_files.push_back(testing::ReadFile(pred_path));
    report_files.push_back(testing::ReadFile(report_path));
  }
  c.Expect(!pred_files[0].empty(), "empty prediction file");
  c.Expect(pred_files[0] == pred_files[1], "prediction files differ");
  c.Expect(report_files[0] == report_files[1], "report files differ");
  size_t lines = std::count(pred_files[0].begin(), pred_files[0].end(), '\n');
  c.Expect(lines == world.mention_count(), "one line per mention");
  c.detail = std::to_string(lines) + " predictions, " +
             std::to_string(pred_files[0].size()) + " + " +
             std::to_string(report_files[0].size()) + " bytes identical";
  return c;
}

Check ParseRobustness() {
  Check c;
  struct Case {
    const char *completion;
    int n;
    ChoiceStatus status;
    int value;
  };
  const Case cases[] = {
      {"Answer: 3.", 5, ChoiceStatus::kOk, 3},
      {"I pick option 2 because it is a company.", 5, ChoiceStatus::kOk, 2},
      {"none", 5, ChoiceStatus::kNoInteger, 0},
      {"0", 5, ChoiceStatus::kOk, 0},
      {"03", 5, ChoiceStatus::kOk, 3},
      {"12 or 3", 5, ChoiceStatus::kOutOfRange, 12},
      {"12 or 3", 12, ChoiceStatus::kOk, 12},
      {"", 5, ChoiceStatus::kNoInteger, 0},
      {"   \n\t", 5, ChoiceStatus::kNoInteger, 0},
      {"None of the above", 5, ChoiceStatus::kNoInteger, 0},
      {"Option #4", 5, ChoiceStatus::kOk, 4},
      {"(5)", 5, ChoiceStatus::kOk, 5},
      {"6", 5, ChoiceStatus::kOutOfRange, 6},
      {"-1", 5, ChoiceStatus::kOk, 1},
      {"2.5", 5, ChoiceStatus::kOk, 2},
      {"Choice: 1\nReason: context", 5, ChoiceStatus::kOk, 1},
      {"one", 5, ChoiceStatus::kNoInteger, 0},
      {"99999999999999999999", 5, ChoiceStatus::kOutOfRange, 2147483647},
      {"the 2nd option", 5, ChoiceStatus::kOk, 2},
      {"Option three", 5, ChoiceStatus::kNoInteger, 0},
      {"１", 5, ChoiceStatus::kNoInteger, 0},
      {"10", 10, ChoiceStatus::kOk, 10},
      {"000", 3, ChoiceStatus::kOk, 0},
  };
  size_t n_cases = 0;
  for (const Case &k : cases) {
    ++n_cases;
    ChoiceParse p = ParseChoice(k.completion, k.n);
    bool ok = p.status == k.status &&
              (k.status == ChoiceStatus::kNoInteger || p.value == k.value);
    c.Expect(ok, std::string("\"") + k.completion + "\" n=" +
                     std::to_string(k.n));
  }

  // Double failure yields the null choice, never a guess.
  Document doc;
  doc.doc_id = "p";
  doc.text = "Mercury rose.";
  doc.mentions.push_back({0, 7, "Mercury", std::nullopt});
  CandidateList three = IdList({"A", "B", "C"});
  const char *bad[] = {"none", "7", "I cannot tell", "", "99", "four"};
  size_t pairs = 0;
  for (const char *first : bad) {
    for (const char *second : bad) {
      MockClient mock(testing::Script{{std::nullopt, first}, {std::nullopt, second}});
      Choice choice = Select(doc, 0, "planet", three, mock,
                             BuiltinTemplate("select"), {});
      c.Expect(choice.index == 0 && choice.unparseable && choice.attempts == 2,
               std::string("double failure \"") + first + "\", \"" + second +
                   "\"");
      ++pairs;
    }
  }
  c.detail = std::to_string(n_cases) + " completions, " +
             std::to_string(pairs) + " double-failure pairs";
  return c;
}

class RoundCounter : public PipelineObserver {
 public:
  void OnValidationRound(const Document &doc) override {
    std::lock_guard<std::mutex> lock(mu_);
    ++rounds_[doc.doc_id];
  }
  void OnReselect(const Document &doc, size_t mention_index, int) override {
    std::lock_guard<std::mutex> lock(mu_);
    reselected_.insert({doc.doc_id, mention_index});
  }
  void OnVerdict(const Document &doc, size_t mention_index, bool) override {
    std::lock_guard<std::mutex> lock(mu_);
    if (reselected_.count({doc.doc_id, mention_index})) ++verdicts_after_;
  }
  std::map<std::string, int> rounds_;
  std::set<std::pair<std::string, size_t>> reselected_;
  int verdicts_after_ = 0;

 private:
  std::mutex mu_;
};

Check SingleRound() {
  Check c;
  World world = MakeWorld({.docs = 30, .planted = 8, .hidden = 4});
  OracleClient oracle(world);
  RoundCounter counter;
  RunMode(world, Mode::kFull, oracle, &counter, 4);
  int max_rounds = 0;
  for (const auto &[doc, n] : counter.rounds_) max_rounds = std::max(max_rounds, n);
  size_t max_validations = 0;
  for (const auto &[m, n] : oracle.validations()) {
    max_validations = std::max(max_validations, n);
  }
  c.Expect(max_rounds <= 1, "a document had " + std::to_string(max_rounds) +
                                " validation rounds");
  c.Expect(counter.verdicts_after_ == 0, "verdict after reselect (observer)");
  c.Expect(oracle.validations_after_reselect() == 0,
           "validation after reselect (LLM)");
  c.Expect(max_validations <= 1, "a mention was validated twice");
  c.Expect(counter.reselected_.size() == 8,
           "reselections " + std::to_string(counter.reselected_.size()));
  c.detail = std::to_string(counter.rounds_.size()) + " documents, max " +
             std::to_string(max_rounds) + " round, " +
             std::to_string(counter.reselected_.size()) +
             " reselections, 0 re-validated";
  return c;
}

Check Taxonomy() {
  Check c;
  struct Row {
    const char *gold;
    std::optional<std::string_view> predicted;
    ErrorCategory expected;
  };
  const Row rows[] = {
      {"Sony", "Sony Music", ErrorCategory::kNarrow},
      {"Volkswagen Group", "Volkswagen", ErrorCategory::kExpand},
      {"United States Navy", "Navy", ErrorCategory::kExpand},
      {"Sony", std::nullopt, ErrorCategory::kNoAnswer},
      // Needs world knowledge; the token heuristic cannot call it expand.
      {"Moscow", "Russia", ErrorCategory::kOtherMismatch},
  };
  std::string detail;
  for (const Row &r : rows) {
    ErrorCategory got = CategorizeError(r.gold, r.predicted);
    c.Expect(got == r.expected,
             std::string(r.gold) + " -> " +
                 std::string(r.predicted.value_or("NIL")) + " = " +
                 std::string(ErrorCategoryName(got)));
    if (!detail.empty()) detail += ", ";
    detail += std::string(r.gold) + "->" +
              std::string(r.predicted.value_or("NIL")) + "=" +
              std::string(ErrorCategoryName(got));
  }
  c.detail = detail;
  return c;
}

int Main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"oracle end-to-end", OracleEndToEnd},
      {"controlled recovery", ControlledRecovery},
      {"description leg", DescriptionLeg},
      {"merge laws", MergeLaws},
      {"metric oracle", MetricOracle},
      {"determinism", Determinism},
      {"parse robustness", ParseRobustness},
      {"single validation round", SingleRound},
      {"error taxonomy", Taxonomy},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception &e) {
      c.Expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu (%s): %s%s\n", c.ok() ? "PASS" : "FAIL",
                i + 1, criteria[i].first.c_str(), c.detail.c_str(),
                c.Summary().c_str());
    failures += !c.ok();
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace elink

int main() { return elink::Main(); }
