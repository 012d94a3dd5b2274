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

#ifndef ELINK_KB_H_
#define ELINK_KB_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace elink {

struct Entity {
  std::string id;
  std::string title;
  std::string description;  // may be empty
  std::vector<std::string> aliases;

  bool operator==(const Entity &other) const = default;
};

// Precomputed token sets used by lexical scoring.
struct EntityTerms {
  std::vector<std::string> title;        // all title tokens
  std::vector<std::string> description;  // content tokens only
};

// Immutable, id-keyed entity inventory with a normalized alias index. All
// accessors are const and safe to call from concurrent workers.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Builds a knowledge base from entities in any order. Throws DataError on
  // empty or duplicate ids and empty titles.
  static KnowledgeBase FromEntities(std::vector<Entity> entities);

  // Loads a JSONL file, one entity object per line. Blank lines are
  // skipped. Errors carry the 1-based line number.
  static KnowledgeBase Load(const std::filesystem::path &path);

  size_t size() const { return entities_.size(); }
  bool empty() const { return entities_.empty(); }
  bool Contains(std::string_view id) const;

  // Returns nullptr when the id is unknown.
  const Entity *Find(std::string_view id) const;

  // Throws LookupError when the id is unknown.
  const Entity &Get(std::string_view id) const;
  const std::string &Description(std::string_view id) const;

  // Ids whose normalized title or alias equals Normalize(surface), in
  // lexicographic id order.
  std::vector<std::string> LookupAlias(std::string_view surface) const;

  // Entities in lexicographic id order.
  const std::vector<Entity> &entities() const { return entities_; }
  const EntityTerms &Terms(size_t position) const { return terms_[position]; }

 private:
  std::vector<Entity> entities_;
  std::vector<EntityTerms> terms_;
  std::unordered_map<std::string, size_t> by_id_;
  std::unordered_map<std::string, std::vector<std::string>> alias_index_;
};

}  // namespace elink

#endif  // ELINK_KB_H_
