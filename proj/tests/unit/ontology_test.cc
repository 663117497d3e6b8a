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

#include "langaux/ontology.h"

#include <gtest/gtest.h>

namespace langaux {
namespace {

using Strings = std::vector<std::string>;

void ExpectMatrixProperties(const DependencyMatrix &m) {
  for (int a = 0; a < m.size(); ++a) {
    EXPECT_EQ(m.entry(a, a), Dependency::kImplies) << m.names()[a];
    for (int b = 0; b < m.size(); ++b) {
      EXPECT_EQ(m.entry(a, b) == Dependency::kExcludes,
                m.entry(b, a) == Dependency::kExcludes)
          << m.names()[a] << " / " << m.names()[b];
    }
  }
}

TEST(RelationTargetsTest, LeftOfWorkedExample) {
  const Vocabulary vocab = Vocabulary::Default();
  const std::vector<double> y =
      RelationTargets("left of", vocab, DependencyMatrix::Default());
  ASSERT_EQ(y.size(), 8u);
  auto at = [&](const char *r) { return y[*vocab.RelationIndex(r)]; };
  EXPECT_EQ(at("left of"), 1.0);
  EXPECT_EQ(at("next to"), 1.0);
  EXPECT_EQ(at("above"), 0.0);
  EXPECT_EQ(at("under"), 0.0);
  EXPECT_EQ(at("facing"), 0.5);
  EXPECT_EQ(at("right of"), 0.0);
}

TEST(RelationTargetsTest, TargetsFollowTheMatrixRowExactly) {
  const Vocabulary vocab = Vocabulary::Default();
  const DependencyMatrix dep = DependencyMatrix::Default();
  for (int a = 0; a < vocab.num_relations(); ++a) {
    const auto y = RelationTargets(vocab.relations()[a], vocab, dep);
    for (int b = 0; b < vocab.num_relations(); ++b) {
      const double want = dep.entry(a, b) == Dependency::kImplies    ? 1.0
                          : dep.entry(a, b) == Dependency::kExcludes ? 0.0
                                                                     : 0.5;
      EXPECT_EQ(y[b], want);
    }
    EXPECT_EQ(y[a], 1.0);
  }
}

TEST(RelationTargetsTest, UnknownRelationThrows) {
  EXPECT_THROW(RelationTargets("inside", Vocabulary::Default(),
                               DependencyMatrix::Default()),
               std::invalid_argument);
}

TEST(DependencyMatrixTest, DefaultSatisfiesDiagonalAndSymmetry) {
  ExpectMatrixProperties(DependencyMatrix::Default());
}

TEST(DependencyMatrixTest, DefaultMatchesVocabularyOrder) {
  EXPECT_EQ(DependencyMatrix::Default().names(), Vocabulary::Default().relations());
}

TEST(DependencyMatrixTest, RejectsNonImplyingDiagonal) {
  EXPECT_THROW(DependencyMatrix::FromText("a : U E\nb : E I\n"), ConfigError);
}

TEST(DependencyMatrixTest, RejectsAsymmetricExclusion) {
  EXPECT_THROW(DependencyMatrix::FromText("a : I E\nb : U I\n"), ConfigError);
}

TEST(DependencyMatrixTest, RejectsBadCellsAndShapes) {
  EXPECT_THROW(DependencyMatrix::FromText("a : I X\nb : U I\n"), ConfigError);
  EXPECT_THROW(DependencyMatrix::FromText("a : I\nb : U I\n"), ConfigError);
  const Strings order{"b", "a"};
  EXPECT_THROW(DependencyMatrix::FromText("a : I U\nb : U I\n", &order),
               ConfigError);
}

TEST(DependencyMatrixTest, PrefixAndReorderPreserveEntries) {
  const DependencyMatrix m = DependencyMatrix::Default();
  const DependencyMatrix p = m.Prefix(5);
  ASSERT_EQ(p.size(), 5);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) EXPECT_EQ(p.entry(a, b), m.entry(a, b));
  }
  Strings order(m.names().rbegin(), m.names().rend());
  const DependencyMatrix r = m.Reordered(order);
  const int n = m.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      EXPECT_EQ(r.entry(a, b), m.entry(n - 1 - a, n - 1 - b));
    }
  }
  ExpectMatrixProperties(r);
}

TEST(VocabularyTest, DefaultShape) {
  const Vocabulary v = Vocabulary::Default();
  EXPECT_EQ(v.num_relations(), 8);
  EXPECT_EQ(v.attributes().back(), kOthers);
  EXPECT_EQ(v.others_attribute(), v.num_attribute_classes() - 1);
  EXPECT_EQ(v.AttributeIndex("zebra-striped"), v.others_attribute());
  const int white = v.AttributeIndex("white");
  EXPECT_LT(white, v.others_attribute());
  EXPECT_EQ(v.attributes()[white], "white");
  EXPECT_EQ(v.GroupOf("white"), AttributeGroup::kColor);
  EXPECT_FALSE(v.RelationIndex("inside").has_value());
}

TEST(VocabularyTest, RelationPrefix) {
  const Vocabulary v = Vocabulary::Default().WithRelationPrefix(5);
  EXPECT_EQ(v.relations(),
            (Strings{"next to", "left of", "right of", "above", "under"}));
  EXPECT_EQ(v.attributes(), Vocabulary::Default().attributes());
}

TEST(SelectVocabularyTest, ThresholdsAndOrdering) {
  FrequencyTables f;
  f.relations = {{"near", 10}, {"above", 30}, {"behind", 10}, {"on", 3}};
  f.attributes = {{"red", 5}, {"round", 7}, {"blue", 5}, {"tiny", 1}};
  const Vocabulary v = SelectVocabulary(f, 3, 1, ParserLexicons::Default());
  EXPECT_EQ(v.relations(), (Strings{"above", "behind", "near"}));
  EXPECT_EQ(v.attributes(), (Strings{"round", "blue", "red", "others"}));
  EXPECT_EQ(v.GroupOf("round"), AttributeGroup::kShape);
}

TEST(SelectVocabularyTest, EmptySelectionNamesTheThreshold) {
  FrequencyTables f;
  f.relations = {{"near", 2}};
  f.attributes = {{"red", 5}};
  try {
    SelectVocabulary(f, 5, 1, ParserLexicons::Default());
    FAIL() << "expected SelectionError";
  } catch (const SelectionError &e) {
    EXPECT_NE(std::string(e.what()).find("rel"), std::string::npos) << e.what();
  }
  EXPECT_THROW(SelectVocabulary(f, 0, 9, ParserLexicons::Default()), SelectionError);
}

TEST(ClassListTest, MatchesNamesSynonymsAndOthers) {
  const ClassList c = ClassList::Default();
  EXPECT_EQ(c.size(), 19);
  EXPECT_EQ(c.name(c.others()), kOthers);
  EXPECT_EQ(c.Match("chair"), *c.IndexOf("chair"));
  EXPECT_EQ(c.Match("armchair"), *c.IndexOf("chair"));
  EXPECT_EQ(c.Match("couch"), *c.IndexOf("sofa"));
  EXPECT_EQ(c.Match("trash"), *c.IndexOf("garbage bin"));
  EXPECT_EQ(c.Match("spaceship"), c.others());
  EXPECT_FALSE(c.IndexOf("spaceship").has_value());
}

}  // namespace
}  // namespace langaux
