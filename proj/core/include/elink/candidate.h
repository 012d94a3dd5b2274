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

#ifndef ELINK_CANDIDATE_H_
#define ELINK_CANDIDATE_H_

#include <string>
#include <string_view>
#include <vector>

namespace elink {

struct Candidate {
  std::string id;
  std::string title;
  std::string description;
  double score = 0.0;  // retriever score in [0, 1]

  bool operator==(const Candidate &other) const = default;
};

enum class CandidateSource { kOriginal, kLlm, kMerged };

std::string_view CandidateSourceName(CandidateSource source);

// A ranked list of candidates for one mention. Lists produced by a
// retriever are sorted by descending score; merged lists keep merge order.
// No list holds a duplicate id. Pipeline defaults keep every list at ten
// items or fewer.
struct CandidateList {
  static constexpr size_t kDefaultLimit = 10;

  CandidateSource source = CandidateSource::kOriginal;
  std::vector<Candidate> items;

  size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  bool Contains(std::string_view id) const;

  // 1-based option position of `id`, or 0 when absent.
  int PositionOf(std::string_view id) const;

  bool operator==(const CandidateList &other) const = default;
};

}  // namespace elink

#endif  // ELINK_CANDIDATE_H_
