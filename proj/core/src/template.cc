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

#include "elink/template.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "elink/error.h"

namespace elink {

const std::vector<std::pair<std::string, std::string>> &BuiltinPrompts();

namespace {

bool IsNameChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

PromptTemplate ReadTemplate(const std::filesystem::path &dir,
                            std::string_view name) {
  std::filesystem::path file = dir / (std::string(name) + ".txt");
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read template " + file.string());
  std::ostringstream body;
  body << in.rdbuf();
  return PromptTemplate{std::string(name), body.str()};
}

}  // namespace

PromptTemplate BuiltinTemplate(std::string_view name) {
  for (const auto &[n, body] : BuiltinPrompts()) {
    if (n == name) return PromptTemplate{n, body};
  }
  throw ConfigError("no built-in template named \"" + std::string(name) +
                    "\"");
}

std::string Render(const PromptTemplate &tpl, const TemplateVars &vars) {
  const std::string &body = tpl.body;
  std::string out;
  out.reserve(body.size() * 2);
  size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (c == '{' && i + 1 < body.size() && body[i + 1] == '{') {
      out.push_back('{');
      i += 2;
      continue;
    }
    if (c == '}' && i + 1 < body.size() && body[i + 1] == '}') {
      out.push_back('}');
      i += 2;
      continue;
    }
    if (c == '{') {
      size_t j = i + 1;
      while (j < body.size() && IsNameChar(body[j])) ++j;
      if (j > i + 1 && j < body.size() && body[j] == '}') {
        std::string_view name(body.data() + i + 1, j - i - 1);
        auto it = vars.find(name);
        if (it == vars.end()) {
          throw ConfigError("unresolved placeholder: " + std::string(name));
        }
        out.append(it->second);
        i = j + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

PromptSet PromptSet::Builtin() {
  return PromptSet{BuiltinTemplate("interpret"), BuiltinTemplate("select"),
                   BuiltinTemplate("validate"), BuiltinTemplate("reselect")};
}

PromptSet PromptSet::FromDirectory(const std::filesystem::path &dir,
                                   std::string_view interpret,
                                   std::string_view select,
                                   std::string_view validate,
                                   std::string_view reselect) {
  return PromptSet{ReadTemplate(dir, interpret), ReadTemplate(dir, select),
                   ReadTemplate(dir, validate), ReadTemplate(dir, reselect)};
}

}  // namespace elink
