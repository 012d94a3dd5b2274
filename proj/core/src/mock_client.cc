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

#include <fstream>

#include "elink/error.h"
#include "elink/llm.h"
#include "elink/text.h"
#include "nlohmann/json.hpp"

namespace elink {

MockClient::MockClient(std::vector<Entry> script) : script_(std::move(script)) {
  size_t with_match = 0;
  for (const auto &e : script_) with_match += e.match.has_value();
  if (with_match != 0 && with_match != script_.size()) {
    throw DataError(
        "mock script mixes match entries and ordered-queue entries");
  }
  queue_mode_ = !script_.empty() && with_match == 0;
}

std::unique_ptr<MockClient> MockClient::FromFile(
    const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open mock script " + path.string());
  std::vector<Entry> entries;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    std::string where = path.string() + " line " + std::to_string(line_no);
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError(where + ": malformed JSON object");
    }
    auto response = j.find("response");
    if (response == j.end() || !response->is_string()) {
      throw DataError(where + ": missing string \"response\"");
    }
    Entry e;
    e.response = response->get<std::string>();
    if (auto m = j.find("match"); m != j.end()) {
      if (!m->is_string()) throw DataError(where + ": \"match\" not a string");
      e.match = m->get<std::string>();
    }
    entries.push_back(std::move(e));
  }
  return std::make_unique<MockClient>(std::move(entries));
}

std::string MockClient::DoComplete(const LlmRequest &request) {
  calls_.fetch_add(1);
  if (queue_mode_) {
    std::lock_guard<std::mutex> lock(mu_);
    if (next_ >= script_.size()) {
      throw ScriptMissError("mock script exhausted after " +
                            std::to_string(script_.size()) + " responses");
    }
    return script_[next_++].response;
  }
  for (const auto &e : script_) {
    if (request.user.find(*e.match) != std::string::npos) return e.response;
  }
  std::string head = request.user.substr(0, 120);
  throw ScriptMissError("no mock script entry matches prompt: " +
                        text::SingleLine(head));
}

}  // namespace elink
