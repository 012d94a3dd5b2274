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

#ifndef ELINK_LLM_H_
#define ELINK_LLM_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <utility>
#include <vector>

namespace elink {

struct LlmRequest {
  std::optional<std::string> system;
  std::string user;
  double temperature = 0.0;
  int max_tokens = 256;

  // Throws ConfigError unless user is non-empty, temperature is in [0, 2]
  // and max_tokens >= 1.
  void Validate() const;
};

// Sampling settings shared by every request a pipeline stage issues.
struct CompletionParams {
  std::optional<std::string> system;
  double temperature = 0.0;
  int max_tokens = 256;

  LlmRequest MakeRequest(std::string user) const {
    return LlmRequest{system, std::move(user), temperature, max_tokens};
  }
};

// Completion backend. Implementations must be safe to share between
// concurrent pipeline workers.
class LlmClient {
 public:
  virtual ~LlmClient() = default;

  // Validates the request and returns the raw completion text.
  std::string Complete(const LlmRequest &request) {
    request.Validate();
    return DoComplete(request);
  }

 private:
  virtual std::string DoComplete(const LlmRequest &request) = 0;
};

// Deterministic scripted backend.
//
// In match mode every entry has a "match" substring and the first entry (in
// file order) whose substring occurs in the user prompt supplies the
// response. In queue mode no entry has "match" and responses are consumed in
// order, one per call. An empty script answers nothing.
class MockClient : public LlmClient {
 public:
  struct Entry {
    std::optional<std::string> match;
    std::string response;
  };

  explicit MockClient(std::vector<Entry> script);

  // Reads a JSONL script of {"match": ..., "response": ...} objects.
  static std::unique_ptr<MockClient> FromFile(const std::filesystem::path &path);

  bool queue_mode() const { return queue_mode_; }
  size_t call_count() const { return calls_.load(); }

 private:
  std::string DoComplete(const LlmRequest &request) override;

  std::vector<Entry> script_;
  bool queue_mode_ = false;
  std::mutex mu_;
  size_t next_ = 0;  // guarded by mu_
  std::atomic<size_t> calls_{0};
};

// Client for OpenAI-compatible chat-completions servers.
struct HttpClientOptions {
  // Scheme, host, optional port and path prefix, e.g.
  // "https://api.openai.com/v1". "/chat/completions" is appended.
  std::string base_url = "https://api.openai.com/v1";
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{60};
  int max_in_flight = 4;
};

class HttpClient : public LlmClient {
 public:
  explicit HttpClient(HttpClientOptions options);

  size_t attempt_count() const { return attempts_.load(); }

 private:
  std::string DoComplete(const LlmRequest &request) override;

  HttpClientOptions options_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // prefix + /chat/completions
  std::counting_semaphore<1024> in_flight_;
  std::atomic<size_t> attempts_{0};
};

// Request body for the chat-completions endpoint.
std::string BuildChatRequestBody(const std::string &model,
                                 const LlmRequest &request);

// Extracts choices[0].message.content. Throws TransportError otherwise.
std::string ParseChatResponseBody(const std::string &body);

}  // namespace elink

#endif  // ELINK_LLM_H_
