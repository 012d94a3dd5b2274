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

#include "elink/llm.h"

#include "elink/error.h"
#include "nlohmann/json.hpp"

namespace elink {

using nlohmann::json;
using nlohmann::ordered_json;

void LlmRequest::Validate() const {
  if (user.empty()) throw ConfigError("LLM request with empty prompt");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must be in [0, 2]");
  }
  if (max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
}

std::string BuildChatRequestBody(const std::string &model,
                                 const LlmRequest &request) {
  ordered_json body;
  body["model"] = model;
  ordered_json messages = ordered_json::array();
  if (request.system) {
    messages.push_back({{"role", "system"}, {"content", *request.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user}});
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  return body.dump();
}

std::string ParseChatResponseBody(const std::string &body) {
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw TransportError("response is not valid JSON");
  const json *content = nullptr;
  if (j.is_object() && j.contains("choices") && j["choices"].is_array() &&
      !j["choices"].empty()) {
    const json &first = j["choices"][0];
    if (first.is_object() && first.contains("message") &&
        first["message"].is_object() && first["message"].contains("content")) {
      content = &first["message"]["content"];
    }
  }
  if (content == nullptr) {
    throw TransportError("response has no choices[0].message.content");
  }
  // Some servers return null content for empty completions.
  if (content->is_null()) return "";
  if (!content->is_string()) {
    throw TransportError("choices[0].message.content is not a string");
  }
  return content->get<std::string>();
}

}  // namespace elink
