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

#ifndef ELINK_ERROR_H_
#define ELINK_ERROR_H_

#include <stdexcept>
#include <string>

namespace elink {

// Base class for all errors raised by the toolkit. The subclass decides the
// command-line exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration, unknown option values, or broken prompt templates.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (KB, corpus, predictions, scripts).
class DataError : public Error {
 public:
  using Error::Error;
};

// An entity id that is not present in the knowledge base.
class LookupError : public DataError {
 public:
  explicit LookupError(const std::string &id)
      : DataError("unknown entity id " + id), id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

// LLM backend failure: exhausted retries, bad responses, mock script misses.
class TransportError : public Error {
 public:
  using Error::Error;
};

// The scripted mock had no entry for a prompt.
class ScriptMissError : public TransportError {
 public:
  using TransportError::TransportError;
};

}  // namespace elink

#endif  // ELINK_ERROR_H_
