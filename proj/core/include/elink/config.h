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

#ifndef ELINK_CONFIG_H_
#define ELINK_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace elink {

enum class Mode { kFull, kNoDescription, kNoValidation };

// "full", "no_description", "no_validation".
std::string_view ModeName(Mode mode);
// Throws ConfigError for unknown names.
Mode ParseMode(std::string_view name);
// Comma-separated mode list, e.g. "full,no_validation".
std::vector<Mode> ParseModeList(std::string_view list);

struct PipelineConfig {
  std::string kb_path;
  std::string corpus_path;
  std::string retriever = "lexical";
  int k_per_source = 10;
  int cap = 10;
  Mode mode = Mode::kFull;

  std::string backend = "mock";  // "mock" or "http"
  std::string model;
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key_env = "OPENAI_API_KEY";
  std::string mock_script;
  double temperature = 0.0;
  int max_tokens = 256;
  int max_retries = 3;
  int backoff_ms = 500;
  int timeout_s = 60;
  int max_in_flight = 4;

  std::string prompts_dir;  // empty: compiled-in templates
  std::string interpret_template = "interpret";
  std::string select_template = "select";
  std::string validate_template = "validate";
  std::string reselect_template = "reselect";

  // Throws ConfigError on out-of-range values or an unknown backend.
  void Validate() const;
};

// A flat key/value document in a TOML subset: `key = value` lines with
// basic or literal string, integer, float or boolean values and `#`
// comments. Tables and arrays are rejected.
using ConfigValue = std::variant<std::string, long long, double, bool>;
std::map<std::string, ConfigValue> ParseConfigText(std::string_view text);

// Applies one key to the config. Throws ConfigError for unknown keys or
// values of the wrong type.
void SetConfigValue(PipelineConfig &config, std::string_view key,
                    const ConfigValue &value);

// Reads a config file. Relative paths in the file resolve against the
// file's directory.
PipelineConfig LoadConfig(const std::filesystem::path &path);

// The effective configuration in the file format, keys in a fixed order.
std::string FormatConfig(const PipelineConfig &config);

}  // namespace elink

#endif  // ELINK_CONFIG_H_
