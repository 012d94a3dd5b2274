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

#ifndef ELINK_TEMPLATE_H_
#define ELINK_TEMPLATE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace elink {

// Name-to-value bindings for template rendering.
using TemplateVars = std::map<std::string, std::string, std::less<>>;

// A prompt body with {name} placeholders. "{{" and "}}" render as literal
// braces; a brace that does not open a well-formed placeholder is literal.
// Substituted values are never rescanned, so values may contain braces.
struct PromptTemplate {
  std::string name;
  std::string body;
};

// Throws ConfigError("unresolved placeholder: <name>") when a placeholder in
// the body has no binding.
std::string Render(const PromptTemplate &tpl, const TemplateVars &vars);

// A compiled-in default by name ("interpret", "select", "validate",
// "reselect"). Throws ConfigError for other names.
PromptTemplate BuiltinTemplate(std::string_view name);

// The four templates used by the pipeline.
struct PromptSet {
  PromptTemplate interpret;
  PromptTemplate select;
  PromptTemplate validate;
  PromptTemplate reselect;

  // Compiled-in defaults (the files shipped under prompts/).
  static PromptSet Builtin();

  // Reads <dir>/<name>.txt for each template; names default to the stage
  // names. Throws ConfigError when a file is missing.
  static PromptSet FromDirectory(const std::filesystem::path &dir,
                                 std::string_view interpret = "interpret",
                                 std::string_view select = "select",
                                 std::string_view validate = "validate",
                                 std::string_view reselect = "reselect");
};

}  // namespace elink

#endif  // ELINK_TEMPLATE_H_
