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

#include "elink/config.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>

#include "elink/error.h"
#include "elink/text.h"
#include "nlohmann/json.hpp"

namespace elink {
namespace {

[[noreturn]] void Fail(size_t line_no, const std::string &what) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
}

bool IsBareKeyChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

void AppendUtf8(std::string &out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Parses a value starting at rest[0]; returns it and the unconsumed tail.
std::pair<ConfigValue, std::string_view> ParseValue(std::string_view rest,
                                                    size_t line_no) {
  if (rest.empty()) Fail(line_no, "missing value");
  if (rest.front() == '"') {
    std::string out;
    size_t i = 1;
    for (; i < rest.size() && rest[i] != '"'; ++i) {
      if (rest[i] != '\\') {
        out.push_back(rest[i]);
        continue;
      }
      if (++i >= rest.size()) Fail(line_no, "unterminated escape");
      switch (rest[i]) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'u':
        case 'U': {
          size_t len = rest[i] == 'u' ? 4 : 8;
          if (i + len >= rest.size()) {
            Fail(line_no, "truncated unicode escape");
          }
          uint32_t cp = 0;
          auto hex = rest.substr(i + 1, len);
          auto [p, ec] = std::from_chars(hex.data(), hex.data() + hex.size(),
                                         cp, 16);
          if (ec != std::errc() || p != hex.data() + hex.size()) {
            Fail(line_no, "bad unicode escape");
          }
          AppendUtf8(out, cp);
          i += len;
          break;
        }
        default:
          Fail(line_no, std::string("unknown escape \\") + rest[i]);
      }
    }
    if (i >= rest.size()) Fail(line_no, "unterminated string");
    return {out, rest.substr(i + 1)};
  }
  if (rest.front() == '\'') {
    size_t end = rest.find('\'', 1);
    if (end == std::string_view::npos) Fail(line_no, "unterminated string");
    return {std::string(rest.substr(1, end - 1)), rest.substr(end + 1)};
  }
  if (rest.front() == '[' || rest.front() == '{') {
    Fail(line_no, "arrays and inline tables are not supported");
  }
  size_t end = 0;
  while (end < rest.size() && rest[end] != '#' && rest[end] != ' ' &&
         rest[end] != '\t') {
    ++end;
  }
  std::string token(rest.substr(0, end));
  std::string_view tail = rest.substr(end);
  if (token == "true") return {true, tail};
  if (token == "false") return {false, tail};
  std::string digits;
  for (char c : token) {
    if (c != '_') digits.push_back(c);
  }
  const char *first = digits.data();
  const char *last = digits.data() + digits.size();
  if (!digits.empty() && digits.front() == '+') ++first;
  bool is_float = digits.find_first_of(".eE") != std::string::npos ||
                  digits == "inf" || digits == "nan";
  if (!is_float) {
    long long v = 0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last && first != last) return {v, tail};
  } else {
    double v = 0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && p == last && first != last) return {v, tail};
  }
  Fail(line_no, "cannot parse value \"" + token + "\"");
}

std::string ExpectString(std::string_view key, const ConfigValue &v) {
  if (const auto *s = std::get_if<std::string>(&v)) return *s;
  throw ConfigError("config key \"" + std::string(key) + "\" expects a string");
}

long long ExpectInt(std::string_view key, const ConfigValue &v) {
  if (const auto *i = std::get_if<long long>(&v)) return *i;
  throw ConfigError("config key \"" + std::string(key) +
                    "\" expects an integer");
}

int ExpectSmallInt(std::string_view key, const ConfigValue &v) {
  long long i = ExpectInt(key, v);
  if (i < INT32_MIN || i > INT32_MAX) {
    throw ConfigError("config key \"" + std::string(key) + "\" out of range");
  }
  return static_cast<int>(i);
}

double ExpectNumber(std::string_view key, const ConfigValue &v) {
  if (const auto *d = std::get_if<double>(&v)) return *d;
  if (const auto *i = std::get_if<long long>(&v)) {
    return static_cast<double>(*i);
  }
  throw ConfigError("config key \"" + std::string(key) + "\" expects a number");
}

std::string Quote(const std::string &s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kNoDescription:
      return "no_description";
    case Mode::kNoValidation:
      return "no_validation";
    case Mode::kFull:
      break;
  }
  return "full";
}

Mode ParseMode(std::string_view name) {
  if (name == "full") return Mode::kFull;
  if (name == "no_description") return Mode::kNoDescription;
  if (name == "no_validation") return Mode::kNoValidation;
  throw ConfigError("unknown mode \"" + std::string(name) +
                    "\" (expected full, no_description or no_validation)");
}

std::vector<Mode> ParseModeList(std::string_view list) {
  std::vector<Mode> modes;
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    std::string name = text::Trim(list.substr(pos, comma - pos));
    Mode m = ParseMode(name);
    if (std::find(modes.begin(), modes.end(), m) != modes.end()) {
      throw ConfigError("mode \"" + name + "\" listed twice");
    }
    modes.push_back(m);
    pos = comma + 1;
  }
  return modes;
}

void PipelineConfig::Validate() const {
  if (k_per_source < 1) throw ConfigError("k_per_source must be at least 1");
  if (cap < 1) throw ConfigError("cap must be at least 1");
  if (backend != "mock" && backend != "http") {
    throw ConfigError("unknown backend \"" + backend +
                      "\" (expected mock or http)");
  }
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must be in [0, 2]");
  }
  if (max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  if (max_retries < 0) throw ConfigError("max_retries must be non-negative");
  if (backoff_ms < 0) throw ConfigError("backoff_ms must be non-negative");
  if (timeout_s < 1) throw ConfigError("timeout_s must be at least 1");
}

std::map<std::string, ConfigValue> ParseConfigText(std::string_view text) {
  std::map<std::string, ConfigValue> out;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size() || line[i] == '#') continue;
    if (line[i] == '[') Fail(line_no, "tables are not supported");

    size_t key_begin = i;
    while (i < line.size() && IsBareKeyChar(line[i])) ++i;
    std::string key(line.substr(key_begin, i - key_begin));
    if (key.empty()) Fail(line_no, "expected a key");
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size() || line[i] != '=') Fail(line_no, "expected '='");
    ++i;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;

    auto [value, tail] = ParseValue(line.substr(i), line_no);
    size_t t = 0;
    while (t < tail.size() && (tail[t] == ' ' || tail[t] == '\t')) ++t;
    if (t < tail.size() && tail[t] != '#') {
      Fail(line_no, "unexpected text after value");
    }
    if (!out.emplace(key, std::move(value)).second) {
      Fail(line_no, "duplicate key \"" + key + "\"");
    }
  }
  return out;
}

void SetConfigValue(PipelineConfig &c, std::string_view key,
                    const ConfigValue &v) {
  using Setter = std::function<void(PipelineConfig &, const ConfigValue &)>;
  auto str = [](std::string PipelineConfig::*field, std::string_view k) {
    return Setter([field, k](PipelineConfig &c, const ConfigValue &v) {
      c.*field = ExpectString(k, v);
    });
  };
  auto num = [](int PipelineConfig::*field, std::string_view k) {
    return Setter([field, k](PipelineConfig &c, const ConfigValue &v) {
      c.*field = ExpectSmallInt(k, v);
    });
  };
  static const std::map<std::string, Setter, std::less<>> kSetters = {
      {"kb_path", str(&PipelineConfig::kb_path, "kb_path")},
      {"corpus_path", str(&PipelineConfig::corpus_path, "corpus_path")},
      {"retriever", str(&PipelineConfig::retriever, "retriever")},
      {"k_per_source", num(&PipelineConfig::k_per_source, "k_per_source")},
      {"cap", num(&PipelineConfig::cap, "cap")},
      {"mode",
       [](PipelineConfig &c, const ConfigValue &v) {
         c.mode = ParseMode(ExpectString("mode", v));
       }},
      {"backend", str(&PipelineConfig::backend, "backend")},
      {"model", str(&PipelineConfig::model, "model")},
      {"base_url", str(&PipelineConfig::base_url, "base_url")},
      {"api_key_env", str(&PipelineConfig::api_key_env, "api_key_env")},
      {"mock_script", str(&PipelineConfig::mock_script, "mock_script")},
      {"temperature",
       [](PipelineConfig &c, const ConfigValue &v) {
         c.temperature = ExpectNumber("temperature", v);
       }},
      {"max_tokens", num(&PipelineConfig::max_tokens, "max_tokens")},
      {"max_retries", num(&PipelineConfig::max_retries, "max_retries")},
      {"backoff_ms", num(&PipelineConfig::backoff_ms, "backoff_ms")},
      {"timeout_s", num(&PipelineConfig::timeout_s, "timeout_s")},
      {"max_in_flight", num(&PipelineConfig::max_in_flight, "max_in_flight")},
      {"prompts_dir", str(&PipelineConfig::prompts_dir, "prompts_dir")},
      {"interpret_template",
       str(&PipelineConfig::interpret_template, "interpret_template")},
      {"select_template",
       str(&PipelineConfig::select_template, "select_template")},
      {"validate_template",
       str(&PipelineConfig::validate_template, "validate_template")},
      {"reselect_template",
       str(&PipelineConfig::reselect_template, "reselect_template")},
  };
  auto it = kSetters.find(key);
  if (it == kSetters.end()) {
    throw ConfigError("unknown config key \"" + std::string(key) + "\"");
  }
  it->second(c, v);
}

PipelineConfig LoadConfig(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  PipelineConfig config;
  for (const auto &[key, value] : ParseConfigText(body.str())) {
    SetConfigValue(config, key, value);
  }
  const std::filesystem::path base = path.parent_path();
  for (std::string *p : {&config.kb_path, &config.corpus_path,
                         &config.mock_script, &config.prompts_dir}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) {
      *p = (base / *p).lexically_normal().string();
    }
  }
  return config;
}

std::string FormatConfig(const PipelineConfig &c) {
  std::ostringstream out;
  auto line = [&](const char *key, const std::string &value) {
    out << key << " = " << value << '\n';
  };
  line("kb_path", Quote(c.kb_path));
  line("corpus_path", Quote(c.corpus_path));
  line("retriever", Quote(c.retriever));
  line("k_per_source", std::to_string(c.k_per_source));
  line("cap", std::to_string(c.cap));
  line("mode", Quote(std::string(ModeName(c.mode))));
  line("backend", Quote(c.backend));
  line("model", Quote(c.model));
  line("base_url", Quote(c.base_url));
  line("api_key_env", Quote(c.api_key_env));
  line("mock_script", Quote(c.mock_script));
  line("temperature", nlohmann::json(c.temperature).dump());
  line("max_tokens", std::to_string(c.max_tokens));
  line("max_retries", std::to_string(c.max_retries));
  line("backoff_ms", std::to_string(c.backoff_ms));
  line("timeout_s", std::to_string(c.timeout_s));
  line("max_in_flight", std::to_string(c.max_in_flight));
  line("prompts_dir", Quote(c.prompts_dir));
  line("interpret_template", Quote(c.interpret_template));
  line("select_template", Quote(c.select_template));
  line("validate_template", Quote(c.validate_template));
  line("reselect_template", Quote(c.reselect_template));
  return out.str();
}

}  // namespace elink
