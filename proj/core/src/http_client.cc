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

#include <regex>
#include <thread>

#include "elink/error.h"
#include "elink/llm.h"
#include "httplib.h"

namespace elink {
namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024> &sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard &) = delete;
  SlotGuard &operator=(const SlotGuard &) = delete;

 private:
  std::counting_semaphore<1024> &sem_;
};

bool IsTransientStatus(int status) { return status == 429 || status >= 500; }

ptrdiff_t ClampInFlight(int n) {
  if (n < 1) throw ConfigError("max_in_flight must be at least 1");
  return std::min(n, 1024);
}

}  // namespace

HttpClient::HttpClient(HttpClientOptions options)
    : options_(std::move(options)),
      in_flight_(ClampInFlight(options_.max_in_flight)) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(options_.base_url, m, kUrl)) {
    throw ConfigError("invalid base_url \"" + options_.base_url + "\"");
  }
  origin_ = m[1].str();
  std::string prefix = m[2].str();
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/chat/completions";
  if (options_.model.empty()) throw ConfigError("HTTP backend needs a model");
  if (options_.max_retries < 0) throw ConfigError("max_retries is negative");
}

std::string HttpClient::DoComplete(const LlmRequest &request) {
  SlotGuard slot(in_flight_);
  const std::string body = BuildChatRequestBody(options_.model, request);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }

  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    attempts_.fetch_add(1);
    httplib::Client client(origin_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "connection error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      return ParseChatResponseBody(res->body);
    }
    std::string detail = "HTTP " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 200);
    if (!IsTransientStatus(res->status)) throw TransportError(detail);
    last_error = detail;
  }
  throw TransportError("request to " + origin_ + path_ + " failed after " +
                       std::to_string(options_.max_retries + 1) +
                       " attempts; last error: " + last_error);
}

}  // namespace elink
