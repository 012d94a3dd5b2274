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

#include "elink/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "elink/disambig.h"
#include "elink/error.h"
#include "elink/validate.h"

namespace elink {
namespace {

// Runs `fn`, prefixing transport errors with the mention being processed.
template <typename Fn>
auto WithContext(const Document &doc, size_t index, const char *stage,
                 Fn &&fn) {
  auto where = [&] {
    return std::string(stage) + " " + doc.doc_id + "#" +
           std::to_string(index) + ": ";
  };
  try {
    return fn();
  } catch (const ScriptMissError &e) {
    throw ScriptMissError(where() + e.what());
  } catch (const TransportError &e) {
    throw TransportError(where() + e.what());
  }
}

std::optional<std::string> IdAt(const CandidateList &list, int index) {
  if (index <= 0 || index > static_cast<int>(list.size())) return std::nullopt;
  return list.items[index - 1].id;
}

}  // namespace

Pipeline::Pipeline(const KnowledgeBase &kb, const Retriever &retriever,
                   LlmClient &llm, PromptSet prompts, PipelineOptions options,
                   PipelineObserver *observer)
    : kb_(kb),
      retriever_(retriever),
      llm_(llm),
      prompts_(std::move(prompts)),
      options_(std::move(options)),
      observer_(observer) {
  if (options_.k_per_source < 1) throw ConfigError("k_per_source must be >= 1");
  if (options_.cap < 1) throw ConfigError("cap must be >= 1");
  if (options_.workers < 1) throw ConfigError("workers must be >= 1");
}

Prediction Pipeline::LinkMention(const Document &doc, size_t index) const {
  const Mention &mention = doc.mentions[index];
  const bool use_interpretation = options_.mode != Mode::kNoDescription;

  Prediction p;
  p.doc_id = doc.doc_id;
  p.mention_index = index;

  // Stage 1: interpretation and dual-source candidates.
  if (use_interpretation) {
    p.interpretation = Interpret(doc, index, llm_, prompts_.interpret,
                                 options_.completion);
  }
  p.c_original = AttachDescriptions(
      kb_, retriever_.Retrieve(kb_, doc.text, mention, options_.k_per_source));
  p.c_original.source = CandidateSource::kOriginal;
  p.c_llm.source = CandidateSource::kLlm;
  if (use_interpretation) {
    p.c_llm = AttachDescriptions(
        kb_, retriever_.Retrieve(kb_, p.interpretation, mention,
                                 options_.k_per_source));
    p.c_llm.source = CandidateSource::kLlm;
  }
  p.c_final = MergeCandidates(p.c_original, p.c_llm, options_.cap);

  // Stage 2: multiple choice over C_final.
  const std::string &interpretation =
      use_interpretation ? p.interpretation : mention.surface;
  Choice choice = WithContext(doc, index, "select", [&] {
    return Select(doc, index, interpretation, p.c_final, llm_,
                  prompts_.select, options_.completion);
  });
  p.chosen_index = choice.index;
  if (choice.unparseable) {
    p.audit.push_back("unparseable");
  } else if (choice.attempts > 1) {
    p.audit.push_back("select retried");
  }
  if (p.c_final.empty()) p.audit.push_back("no candidates");
  p.final_id = IdAt(p.c_final, p.chosen_index);
  return p;
}

void Pipeline::ValidateDocument(const Document &doc,
                                std::vector<Prediction> &preds) const {
  GlobalContext g = BuildGlobalContext(doc, preds);
  if (g.links.empty()) return;
  if (observer_) observer_->OnValidationRound(doc);

  std::vector<Verdict> verdicts = WithContext(doc, 0, "validate", [&] {
    return ValidateAll(doc, g, llm_, prompts_.validate, options_.completion);
  });
  for (size_t t = 0; t < verdicts.size(); ++t) {
    const Verdict &v = verdicts[t];
    Prediction &p = preds[v.mention_index];
    if (observer_) observer_->OnVerdict(doc, v.mention_index, v.passed);
    p.verdict_explanation = v.explanation;
    if (v.unparseable) p.audit.push_back("unparseable verdict");
    if (v.passed) {
      p.validated = Validation::kPass;
      continue;
    }
    p.validated = Validation::kFail;
    const std::string &interpretation =
        options_.mode == Mode::kNoDescription
            ? doc.mentions[v.mention_index].surface
            : p.interpretation;
    // Re-selected links are final: they are never validated again.
    Choice choice = WithContext(doc, v.mention_index, "reselect", [&] {
      return Reselect(doc, g, t, interpretation, p.c_final, llm_,
                      prompts_.reselect, options_.completion);
    });
    p.reselected_index = choice.index;
    if (choice.unparseable) p.audit.push_back("unparseable reselection");
    p.final_id = IdAt(p.c_final, choice.index);
    if (observer_) observer_->OnReselect(doc, v.mention_index, choice.index);
  }
}

std::vector<Prediction> Pipeline::LinkDocument(const Document &doc) const {
  std::vector<Prediction> preds;
  preds.reserve(doc.mentions.size());
  for (size_t i = 0; i < doc.mentions.size(); ++i) {
    preds.push_back(LinkMention(doc, i));
  }
  if (options_.mode != Mode::kNoValidation) ValidateDocument(doc, preds);
  if (observer_) observer_->OnDocumentDone(doc, preds);
  return preds;
}

std::vector<Prediction> Pipeline::Run(std::span<const Document> docs) const {
  std::vector<std::vector<Prediction>> per_doc(docs.size());
  const size_t n_workers =
      std::min(static_cast<size_t>(options_.workers), docs.size());

  if (n_workers <= 1) {
    for (size_t d = 0; d < docs.size(); ++d) per_doc[d] = LinkDocument(docs[d]);
  } else {
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mu;
    std::exception_ptr error;
    auto work = [&] {
      while (!failed.load()) {
        const size_t d = next.fetch_add(1);
        if (d >= docs.size()) return;
        try {
          per_doc[d] = LinkDocument(docs[d]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<Prediction> out;
  for (auto &preds : per_doc) {
    for (auto &p : preds) out.push_back(std::move(p));
  }
  return out;
}

std::unique_ptr<LlmClient> MakeClient(const PipelineConfig &config) {
  if (config.backend == "mock") {
    if (config.mock_script.empty()) {
      throw ConfigError("mock backend needs mock_script");
    }
    return MockClient::FromFile(config.mock_script);
  }
  if (config.backend == "http") {
    HttpClientOptions options;
    options.base_url = config.base_url;
    options.model = config.model;
    options.max_retries = config.max_retries;
    options.initial_backoff = std::chrono::milliseconds(config.backoff_ms);
    options.timeout = std::chrono::seconds(config.timeout_s);
    options.max_in_flight = config.max_in_flight;
    if (!config.api_key_env.empty()) {
      const char *key = std::getenv(config.api_key_env.c_str());
      if (key == nullptr) {
        throw ConfigError("environment variable " + config.api_key_env +
                          " is not set");
      }
      options.api_key = key;
    }
    return std::make_unique<HttpClient>(std::move(options));
  }
  throw ConfigError("unknown backend \"" + config.backend + "\"");
}

PromptSet LoadPrompts(const PipelineConfig &config) {
  if (config.prompts_dir.empty()) {
    return PromptSet{BuiltinTemplate(config.interpret_template),
                     BuiltinTemplate(config.select_template),
                     BuiltinTemplate(config.validate_template),
                     BuiltinTemplate(config.reselect_template)};
  }
  return PromptSet::FromDirectory(config.prompts_dir,
                                  config.interpret_template,
                                  config.select_template,
                                  config.validate_template,
                                  config.reselect_template);
}

PipelineOptions OptionsFromConfig(const PipelineConfig &config) {
  PipelineOptions options;
  options.mode = config.mode;
  options.k_per_source = static_cast<size_t>(config.k_per_source);
  options.cap = static_cast<size_t>(config.cap);
  options.workers = config.max_in_flight;
  options.completion.temperature = config.temperature;
  options.completion.max_tokens = config.max_tokens;
  return options;
}

std::vector<Prediction> Run(const PipelineConfig &config) {
  config.Validate();
  if (config.kb_path.empty()) throw ConfigError("kb_path is not set");
  if (config.corpus_path.empty()) throw ConfigError("corpus_path is not set");
  auto retriever = MakeRetriever(config.retriever);
  PromptSet prompts = LoadPrompts(config);
  KnowledgeBase kb = KnowledgeBase::Load(config.kb_path);
  std::vector<Document> docs = LoadCorpus(config.corpus_path);
  auto client = MakeClient(config);
  Pipeline pipeline(kb, *retriever, *client, std::move(prompts),
                    OptionsFromConfig(config));
  return pipeline.Run(docs);
}

}  // namespace elink
