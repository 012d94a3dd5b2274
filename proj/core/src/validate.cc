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

#include "elink/validate.h"

#include <algorithm>
#include <cctype>

#include "elink/error.h"
#include "elink/text.h"

namespace elink {
namespace {

bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Drops separators between the verdict word and its explanation.
std::string_view StripLeadingSeparators(std::string_view s) {
  static constexpr std::string_view kDashes[] = {"—", "–"};
  for (;;) {
    if (s.empty()) return s;
    unsigned char c = static_cast<unsigned char>(s.front());
    if (c < 0x80 && (std::isspace(c) || std::ispunct(c))) {
      s.remove_prefix(1);
      continue;
    }
    bool stripped = false;
    for (std::string_view dash : kDashes) {
      if (s.starts_with(dash)) {
        s.remove_prefix(dash.size());
        stripped = true;
      }
    }
    if (!stripped) return s;
  }
}

TemplateVars GlobalVars(const Document &doc, const GlobalContext &g,
                        size_t target) {
  const LinkedMention &link = g.links.at(target);
  return TemplateVars{
      {"text", MarkedText(doc, link.mention_index)},
      {"mention", link.surface},
      {"global_original", g.original},
      {"global_replaced", g.replaced},
      {"descriptions", FormatLinks(g, target)},
  };
}

}  // namespace

Substitution SubstituteWithSpans(
    const Document &doc, std::span<const std::optional<std::string>> titles) {
  const auto &mentions = doc.mentions;
  Substitution out;
  out.text = doc.text;
  // Right to left, so offsets of earlier mentions stay valid.
  for (size_t i = mentions.size(); i-- > 0;) {
    if (i < titles.size() && titles[i]) {
      const Mention &m = mentions[i];
      out.text.replace(m.start, m.end - m.start, *titles[i]);
    }
  }
  out.spans.reserve(mentions.size());
  ptrdiff_t shift = 0;
  for (size_t i = 0; i < mentions.size(); ++i) {
    const Mention &m = mentions[i];
    const size_t start = static_cast<size_t>(static_cast<ptrdiff_t>(m.start) +
                                             shift);
    size_t length = m.end - m.start;
    if (i < titles.size() && titles[i]) {
      shift += static_cast<ptrdiff_t>(titles[i]->size()) -
               static_cast<ptrdiff_t>(length);
      length = titles[i]->size();
    }
    out.spans.emplace_back(start, start + length);
  }
  return out;
}

std::string Substitute(const Document &doc,
                       std::span<const std::optional<std::string>> titles) {
  return SubstituteWithSpans(doc, titles).text;
}

GlobalContext BuildGlobalContext(const Document &doc,
                                 std::span<const Prediction> predictions) {
  GlobalContext g;
  g.original = doc.text;
  std::vector<std::optional<std::string>> titles(doc.mentions.size());
  for (const Prediction &p : predictions) {
    if (p.mention_index >= doc.mentions.size()) {
      throw DataError("prediction for unknown mention " +
                      std::to_string(p.mention_index) + " of " + doc.doc_id);
    }
    const int index = p.chosen_index;
    if (index <= 0 || index > static_cast<int>(p.c_final.size())) continue;
    const Candidate &c = p.c_final.items[index - 1];
    const Mention &m = doc.mentions[p.mention_index];
    titles[p.mention_index] = c.title;
    g.links.push_back(LinkedMention{p.mention_index, m.start, m.end,
                                    m.surface, c.id, c.title, c.description});
  }
  std::sort(g.links.begin(), g.links.end(),
            [](const LinkedMention &a, const LinkedMention &b) {
              return a.mention_index < b.mention_index;
            });
  g.replaced = Substitute(doc, titles);
  return g;
}

Verdict ParseVerdict(std::string_view completion) {
  Verdict v;
  size_t i = 0;
  while (i < completion.size() && !IsAsciiAlpha(completion[i])) ++i;
  size_t j = i;
  while (j < completion.size() && IsAsciiAlpha(completion[j])) ++j;
  std::string word(completion.substr(i, j - i));
  for (char &c : word) c = static_cast<char>(std::tolower(c));
  if (word == "yes" || word == "no") {
    v.passed = word == "yes";
    v.explanation = text::Trim(StripLeadingSeparators(completion.substr(j)));
  } else {
    v.passed = true;
    v.unparseable = true;
    v.explanation = text::Trim(completion);
  }
  return v;
}

std::string FormatLinks(const GlobalContext &g, size_t target) {
  std::string out;
  for (size_t i = 0; i < g.links.size(); ++i) {
    const LinkedMention &link = g.links[i];
    if (i > 0) out += '\n';
    out += i == target ? "* " : "  ";
    out += std::to_string(i + 1) + ". \"" + text::SingleLine(link.surface) +
           "\" → " + text::SingleLine(link.title) + " —";
    std::string description = text::SingleLine(link.description);
    if (!description.empty()) out += " " + description;
  }
  return out;
}

std::vector<Verdict> ValidateAll(const Document &doc, const GlobalContext &g,
                                 LlmClient &llm, const PromptTemplate &tpl,
                                 const CompletionParams &params) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(g.links.size());
  for (size_t t = 0; t < g.links.size(); ++t) {
    std::string prompt = Render(tpl, GlobalVars(doc, g, t));
    Verdict v = ParseVerdict(llm.Complete(params.MakeRequest(prompt)));
    v.mention_index = g.links[t].mention_index;
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

Choice Reselect(const Document &doc, const GlobalContext &g, size_t target,
                std::string_view interpretation, const CandidateList &c_final,
                LlmClient &llm, const PromptTemplate &tpl,
                const CompletionParams &params) {
  if (c_final.empty()) return Choice{};
  TemplateVars vars = GlobalVars(doc, g, target);
  vars["interpretation"] = text::SingleLine(interpretation);
  vars["candidates"] = FormatOptions(c_final);
  std::string prompt = Render(tpl, vars);
  return AskForChoice(prompt, static_cast<int>(c_final.size()), llm, params);
}

}  // namespace elink
