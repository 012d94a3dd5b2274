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

#include "elink/template.h"

#include <gtest/gtest.h>

#include <random>

#include "elink/candidate.h"
#include "elink/disambig.h"
#include "elink/error.h"
#include "fixture_world.h"

namespace elink {
namespace {

TEST(RenderTest, SimpleSubstitution) {
  PromptTemplate tpl{"t", "Explain {mention}."};
  EXPECT_EQ(Render(tpl, {{"mention", "Sony"}}), "Explain Sony.");
}

TEST(RenderTest, EmbedsNumberedCandidateList) {
  CandidateList list;
  list.items = {{"A", "Alpha", "first", 0.9},
                {"B", "Beta", "second", 0.5},
                {"C", "Gamma", "third", 0.1}};
  PromptTemplate tpl{"t", "Options:\n{candidates}\nChoice:"};
  EXPECT_EQ(Render(tpl, {{"candidates", FormatOptions(list)}}),
            "Options:\n1. Alpha — first\n2. Beta — second\n3. Gamma — third\n"
            "0. None of the above\nChoice:");
}

TEST(RenderTest, MissingVariableNamesPlaceholder) {
  PromptTemplate tpl{"t", "{mention} means {interpretation}"};
  try {
    Render(tpl, {{"mention", "x"}});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError &e) {
    EXPECT_STREQ(e.what(), "unresolved placeholder: interpretation");
  }
}

TEST(RenderTest, LiteralBraces) {
  PromptTemplate tpl{"t", "{{mention}} {mention} {not closed {} }"};
  EXPECT_EQ(Render(tpl, {{"mention", "M"}}), "{mention} M {not closed {} }");
}

// Values are inserted verbatim and never rescanned: the output is exactly
// the literal segments interleaved with the values, so distinct values give
// distinct outputs.
TEST(RenderPropertyTest, ValuesWithBracesAreNotExpanded) {
  std::mt19937 rng(5);
  const std::string pieces[] = {"{", "}", "{mention}", "{text}", "{{", "a",
                                " ", "}}", "é", "{candidates}"};
  auto random_value = [&] {
    std::string v;
    size_t n = rng() % 8;
    for (size_t i = 0; i < n; ++i) v += pieces[rng() % 10];
    return v;
  };
  PromptTemplate tpl{"t", "<{mention}|{text}>"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string m = random_value();
    std::string t = random_value();
    std::string out = Render(tpl, {{"mention", m}, {"text", t}});
    EXPECT_EQ(out, "<" + m + "|" + t + ">");
    std::string m2 = random_value();
    if (m2 != m) {
      EXPECT_NE(Render(tpl, {{"mention", m2}, {"text", t}}), out);
    }
  }
}

TEST(PromptSetTest, BuiltinsResolveWithFullVariableMap) {
  PromptSet set = PromptSet::Builtin();
  TemplateVars all = {{"text", "T"},
                      {"mention", "M"},
                      {"interpretation", "I"},
                      {"candidates", "C"},
                      {"global_original", "GO"},
                      {"global_replaced", "GR"},
                      {"descriptions", "D"}};
  for (const PromptTemplate *tpl :
       {&set.interpret, &set.select, &set.validate, &set.reselect}) {
    std::string out = Render(*tpl, all);
    EXPECT_EQ(out.rfind("Task: ", 0), 0u) << tpl->name;
    EXPECT_NE(out.find("\nText: T\n"), std::string::npos) << tpl->name;
  }
  EXPECT_NE(Render(set.select, all).find("Choice:"), std::string::npos);
}

TEST(PromptSetTest, FromDirectory) {
  testing::TempDir dir;
  for (const char *name : {"interpret", "select", "validate", "mine"}) {
    testing::WriteFile(dir / (std::string(name) + ".txt"),
                       std::string("body of ") + name);
  }
  PromptSet set = PromptSet::FromDirectory(dir.path(), "interpret", "select",
                                           "validate", "mine");
  EXPECT_EQ(set.reselect.body, "body of mine");
  EXPECT_THROW(PromptSet::FromDirectory(dir.path()), ConfigError);
  EXPECT_THROW(BuiltinTemplate("nope"), ConfigError);
}

}  // namespace
}  // namespace elink
