// Copyright 2026 The langaux Authors.
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

#include <gtest/gtest.h>

#include <chrono>
#include <fstream>

#include "langaux/json_io.h"
#include "langaux/parser.h"

namespace langaux {
namespace {

Json LoadFixtures() {
  std::ifstream in(std::string(LANGAUX_TEST_DATA_DIR) + "/parser_fixtures.json");
  return Json::parse(in);
}

std::optional<std::string> Referent(const Json &f) {
  if (!f.contains("referent")) return std::nullopt;
  return f["referent"].get<std::string>();
}

TEST(ParserFixturesTest, EveryFixtureMatchesItsAnnotation) {
  const Json fixtures = LoadFixtures();
  ASSERT_GE(fixtures.size(), 50u);
  const Parser parser(ParserLexicons::Default());
  int matched = 0;
  for (const Json &f : fixtures) {
    const std::string text = f["text"];
    const Json got = ToJson(parser.ParseText(text, Referent(f)));
    bool ok = true;
    for (const char *key :
         {"entities", "triples", "relation_phrase_count", "parse_ok"}) {
      if (got[key] != f[key]) {
        ok = false;
        ADD_FAILURE() << text << "\n  " << key << " expected " << f[key].dump()
                      << "\n  got " << got[key].dump();
      }
    }
    matched += ok;
  }
  EXPECT_EQ(matched, static_cast<int>(fixtures.size()));
}

TEST(ParserFixturesTest, IncludesTheThreeReferenceSentences) {
  const Json fixtures = LoadFixtures();
  for (const char *text :
       {"the small chair is facing the door",
        "This is a brown chair. It is located under the whiteboard.",
        "there is a white table placed next to the bed."}) {
    bool found = false;
    for (const Json &f : fixtures) found |= f["text"] == text;
    EXPECT_TRUE(found) << text;
  }
}

TEST(ParserFixturesTest, CoversEveryCanonicalRelationWithATriple) {
  const Json fixtures = LoadFixtures();
  std::set<std::string> seen;
  for (const Json &f : fixtures) {
    for (const Json &t : f["triples"]) seen.insert(t["relation"].get<std::string>());
  }
  for (const char *r : {"next to", "left of", "right of", "above", "under",
                        "facing", "in front of", "behind", "near", "close to",
                        "far from", "on top of", "on", "in", "beside",
                        "across from", "between", "around"}) {
    EXPECT_TRUE(seen.count(r)) << r;
  }
}

TEST(ParserFixturesTest, SuiteRunsWellUnderOneSecond) {
  const Json fixtures = LoadFixtures();
  const Parser parser(ParserLexicons::Default());
  const auto start = std::chrono::steady_clock::now();
  for (const Json &f : fixtures) parser.ParseText(f["text"].get<std::string>(), Referent(f));
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 1.0);
}

}  // namespace
}  // namespace langaux
