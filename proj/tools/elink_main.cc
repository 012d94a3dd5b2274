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

// Command-line front end: link, eval, ablate, analyze-errors and
// validate-config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elink/config.h"
#include "elink/error.h"
#include "elink/eval.h"
#include "elink/pipeline.h"
#include "nlohmann/json.hpp"

namespace elink {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitTransport = 3;

// Flags that override config-file values.
struct Overrides {
  std::string config;
  std::optional<std::string> kb;
  std::optional<std::string> corpus;
  std::optional<std::string> mode;
  std::optional<std::string> retriever;
  std::optional<std::string> model;
  std::optional<std::string> backend;
  std::optional<std::string> mock_script;
  std::optional<int> max_in_flight;
  std::optional<std::string> prompts_dir;
};

void AddDataFlags(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--config", o.config, "TOML config file");
  cmd->add_option("--kb", o.kb, "knowledge base JSONL (overrides kb_path)");
  cmd->add_option("--corpus", o.corpus,
                  "corpus JSONL (overrides corpus_path)");
}

void AddRunFlags(CLI::App *cmd, Overrides &o) {
  AddDataFlags(cmd, o);
  cmd->add_option("--mode", o.mode, "full, no_description or no_validation");
  cmd->add_option("--retriever", o.retriever, "candidate retriever name");
  cmd->add_option("--model", o.model, "model name for the HTTP backend");
  cmd->add_option("--backend", o.backend, "http or mock");
  cmd->add_option("--mock-script", o.mock_script, "mock backend script");
  cmd->add_option("--max-in-flight", o.max_in_flight,
                  "concurrent LLM requests and document workers");
  cmd->add_option("--prompts-dir", o.prompts_dir,
                  "directory of prompt templates");
}

PipelineConfig ResolveConfig(const Overrides &o) {
  PipelineConfig c;
  if (!o.config.empty()) c = LoadConfig(o.config);
  if (o.kb) c.kb_path = *o.kb;
  if (o.corpus) c.corpus_path = *o.corpus;
  if (o.mode) c.mode = ParseMode(*o.mode);
  if (o.retriever) c.retriever = *o.retriever;
  if (o.model) c.model = *o.model;
  if (o.backend) c.backend = *o.backend;
  if (o.mock_script) c.mock_script = *o.mock_script;
  if (o.max_in_flight) c.max_in_flight = *o.max_in_flight;
  if (o.prompts_dir) c.prompts_dir = *o.prompts_dir;
  c.Validate();
  return c;
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed for " + path.string());
}

std::filesystem::path MetaPath(const std::filesystem::path &out) {
  return out.string() + ".meta.json";
}

// Line-per-document progress on stderr.
class LogObserver : public PipelineObserver {
 public:
  void OnDocumentDone(const Document &doc,
                      std::span<const Prediction> preds) override {
    size_t linked = 0;
    size_t reselected = 0;
    for (const auto &p : preds) {
      linked += p.final_id.has_value();
      reselected += p.reselected_index.has_value();
    }
    std::lock_guard<std::mutex> lock(mu_);
    std::fprintf(stderr, "%s: %zu mentions, %zu linked, %zu reselected\n",
                 doc.doc_id.c_str(), preds.size(), linked, reselected);
  }

 private:
  std::mutex mu_;
};

struct Inputs {
  KnowledgeBase kb;
  std::vector<Document> docs;
};

Inputs LoadInputs(const PipelineConfig &c) {
  if (c.kb_path.empty()) throw ConfigError("kb_path is not set");
  if (c.corpus_path.empty()) throw ConfigError("corpus_path is not set");
  return Inputs{KnowledgeBase::Load(c.kb_path), LoadCorpus(c.corpus_path)};
}

int CmdLink(const Overrides &o, const std::string &out) {
  PipelineConfig c = ResolveConfig(o);
  auto retriever = MakeRetriever(c.retriever);
  PromptSet prompts = LoadPrompts(c);
  Inputs in = LoadInputs(c);
  auto client = MakeClient(c);
  LogObserver log;
  Pipeline pipeline(in.kb, *retriever, *client, std::move(prompts),
                    OptionsFromConfig(c), &log);
  std::vector<Prediction> preds = pipeline.Run(in.docs);
  WritePredictions(preds, out);

  nlohmann::ordered_json meta;
  meta["mode"] = std::string(ModeName(c.mode));
  meta["retriever"] = c.retriever;
  meta["backend"] = c.backend;
  meta["model"] = c.model;
  meta["k_per_source"] = c.k_per_source;
  meta["cap"] = c.cap;
  meta["temperature"] = c.temperature;
  meta["documents"] = in.docs.size();
  meta["predictions"] = preds.size();
  WriteText(MetaPath(out), meta.dump(2) + "\n");
  std::fprintf(stderr, "wrote %zu predictions to %s\n", preds.size(),
               out.c_str());
  return kExitOk;
}

// Mode label for a prediction file: the flag, else its sidecar, else the
// config.
std::string ModeLabel(const Overrides &o, const PipelineConfig &c,
                      const std::string &predictions) {
  if (o.mode) return *o.mode;
  std::ifstream meta(MetaPath(predictions));
  if (meta) {
    auto j = nlohmann::json::parse(meta, nullptr, false);
    if (j.is_object() && j.contains("mode") && j["mode"].is_string()) {
      return j["mode"].get<std::string>();
    }
  }
  return std::string(ModeName(c.mode));
}

int CmdEval(const Overrides &o, const std::string &predictions,
            const std::string &out) {
  PipelineConfig c = ResolveConfig(o);
  Inputs in = LoadInputs(c);
  std::vector<Prediction> preds = LoadPredictions(predictions);
  Metrics m = MicroF1InKb(preds, in.docs, in.kb);
  ErrorReport errors = CategorizeErrors(preds, in.docs, in.kb);
  std::string mode = ModeLabel(o, c, predictions);
  std::vector<std::pair<std::string, Metrics>> rows = {{mode, m}};
  std::cout << FormatMetricsTable(rows);
  if (m.n_gold_out_kb > 0) {
    std::cout << m.n_gold_out_kb << " gold mentions outside the KB excluded\n";
  }
  if (!out.empty()) WriteText(out, ReportJson(mode, m, errors));
  return kExitOk;
}

int CmdAnalyzeErrors(const Overrides &o, const std::string &predictions,
                     const std::string &out) {
  PipelineConfig c = ResolveConfig(o);
  Inputs in = LoadInputs(c);
  std::vector<Prediction> preds = LoadPredictions(predictions);
  ErrorReport errors = CategorizeErrors(preds, in.docs, in.kb);
  for (const auto &[category, n] : errors.counts) {
    std::cout << ErrorCategoryName(category) << " " << n << "\n";
  }
  for (const auto &e : errors.mentions) {
    std::cout << e.doc_id << "#" << e.mention_index << " \"" << e.surface
              << "\" gold=" << e.gold_id
              << " predicted=" << e.final_id.value_or("NIL") << " "
              << ErrorCategoryName(e.category) << "\n";
  }
  if (!out.empty()) {
    Metrics m = MicroF1InKb(preds, in.docs, in.kb);
    WriteText(out, ReportJson(ModeLabel(o, c, predictions), m, errors));
  }
  return kExitOk;
}

int CmdAblate(const Overrides &o, const std::string &modes_flag,
              const std::string &out) {
  PipelineConfig c = ResolveConfig(o);
  std::vector<Mode> modes = ParseModeList(modes_flag);
  std::vector<AblationRow> rows = Ablate(c, modes);
  std::vector<std::pair<std::string, Metrics>> table;
  for (const auto &row : rows) {
    table.emplace_back(std::string(ModeName(row.mode)), row.metrics);
  }
  std::cout << FormatMetricsTable(table);
  if (!out.empty()) WriteText(out, AblationJson(rows));
  return kExitOk;
}

int CmdValidateConfig(const Overrides &o) {
  std::cout << FormatConfig(ResolveConfig(o));
  return kExitOk;
}

int Main(int argc, char **argv) {
  CLI::App app{"Three-stage LLM entity linking"};
  app.require_subcommand(1);

  Overrides o;
  std::string out;
  std::string predictions;
  std::string modes = "full,no_description,no_validation";

  CLI::App *link = app.add_subcommand("link", "link every mention in a corpus");
  AddRunFlags(link, o);
  link->add_option("--out", out, "prediction JSONL to write")->required();

  CLI::App *eval = app.add_subcommand("eval", "in-KB micro-F1 of predictions");
  AddDataFlags(eval, o);
  eval->add_option("--predictions", predictions, "prediction JSONL")
      ->required();
  eval->add_option("--mode", o.mode, "mode label for the report");
  eval->add_option("--out", out, "JSON report to write");

  CLI::App *ablate =
      app.add_subcommand("ablate", "run and score several modes");
  AddRunFlags(ablate, o);
  ablate->add_option("--modes", modes, "comma-separated modes");
  ablate->add_option("--out", out, "JSON report to write");

  CLI::App *analyze =
      app.add_subcommand("analyze-errors", "categorize linking errors");
  AddDataFlags(analyze, o);
  analyze->add_option("--predictions", predictions, "prediction JSONL")
      ->required();
  analyze->add_option("--out", out, "JSON report to write");

  CLI::App *validate =
      app.add_subcommand("validate-config", "print the effective config");
  AddRunFlags(validate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*link) return CmdLink(o, out);
    if (*eval) return CmdEval(o, predictions, out);
    if (*ablate) return CmdAblate(o, modes, out);
    if (*analyze) return CmdAnalyzeErrors(o, predictions, out);
    if (*validate) return CmdValidateConfig(o);
  } catch (const ConfigError &e) {
    std::fprintf(stderr, "elink: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const DataError &e) {
    std::fprintf(stderr, "elink: data error: %s\n", e.what());
    return kExitData;
  } catch (const TransportError &e) {
    std::fprintf(stderr, "elink: transport error: %s\n", e.what());
    return kExitTransport;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "elink: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace
}  // namespace elink

int main(int argc, char **argv) { return elink::Main(argc, argv); }
