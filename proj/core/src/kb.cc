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

#include "elink/kb.h"

#include <algorithm>
#include <fstream>
#include <string>

#include "elink/error.h"
#include "elink/text.h"
#include "nlohmann/json.hpp"

namespace elink {
namespace {

using nlohmann::json;

std::string LineError(size_t line, const std::string &what) {
  return "line " + std::to_string(line) + ": " + what;
}

Entity ParseEntityLine(const std::string &line, size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error &e) {
    throw DataError(LineError(line_no, std::string("malformed JSON: ") +
                                           e.what()));
  }
  if (!j.is_object()) throw DataError(LineError(line_no, "expected object"));
  auto string_field = [&](const char *key) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw DataError(LineError(
          line_no, std::string("missing or non-string field \"") + key + "\""));
    }
    return it->get<std::string>();
  };
  Entity e;
  e.id = string_field("id");
  e.title = string_field("title");
  e.description = string_field("description");
  if (auto it = j.find("aliases"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw DataError(LineError(line_no, "\"aliases\" must be an array"));
    }
    for (const auto &a : *it) {
      if (!a.is_string()) {
        throw DataError(LineError(line_no, "aliases must be strings"));
      }
      e.aliases.push_back(a.get<std::string>());
    }
  }
  if (e.id.empty()) throw DataError(LineError(line_no, "empty id"));
  if (e.title.empty()) {
    throw DataError(LineError(line_no, "empty title for id " + e.id));
  }
  return e;
}

}  // namespace

KnowledgeBase KnowledgeBase::FromEntities(std::vector<Entity> entities) {
  std::sort(entities.begin(), entities.end(),
            [](const Entity &a, const Entity &b) { return a.id < b.id; });
  KnowledgeBase kb;
  kb.entities_ = std::move(entities);
  kb.terms_.reserve(kb.entities_.size());
  for (size_t i = 0; i < kb.entities_.size(); ++i) {
    const Entity &e = kb.entities_[i];
    if (e.id.empty()) throw DataError("entity with empty id");
    if (e.title.empty()) throw DataError("empty title for id " + e.id);
    if (!kb.by_id_.emplace(e.id, i).second) {
      throw DataError("duplicate id " + e.id);
    }
    kb.terms_.push_back(EntityTerms{text::TokenSet(e.title),
                                    text::ContentTokenSet(e.description)});

    std::vector<std::string> keys;
    keys.push_back(text::Normalize(e.title));
    for (const auto &alias : e.aliases) keys.push_back(text::Normalize(alias));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto &key : keys) {
      if (key.empty()) continue;
      // Entities are visited in id order, so each list stays sorted.
      kb.alias_index_[std::move(key)].push_back(e.id);
    }
  }
  return kb;
}

KnowledgeBase KnowledgeBase::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open knowledge base " + path.string());
  std::vector<Entity> entities;
  std::unordered_map<std::string, size_t> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty()) continue;
    Entity e = ParseEntityLine(line, line_no);
    if (!seen.emplace(e.id, line_no).second) {
      throw DataError("duplicate id " + e.id + " (line " +
                      std::to_string(line_no) + ")");
    }
    entities.push_back(std::move(e));
  }
  if (in.bad()) throw DataError("read failure on " + path.string());
  return FromEntities(std::move(entities));
}

bool KnowledgeBase::Contains(std::string_view id) const {
  return Find(id) != nullptr;
}

const Entity *KnowledgeBase::Find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &entities_[it->second];
}

const Entity &KnowledgeBase::Get(std::string_view id) const {
  const Entity *e = Find(id);
  if (e == nullptr) throw LookupError(std::string(id));
  return *e;
}

const std::string &KnowledgeBase::Description(std::string_view id) const {
  return Get(id).description;
}

std::vector<std::string> KnowledgeBase::LookupAlias(
    std::string_view surface) const {
  auto it = alias_index_.find(text::Normalize(surface));
  if (it == alias_index_.end()) return {};
  return it->second;
}

}  // namespace elink
