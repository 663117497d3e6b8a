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

#include "langaux/labels.h"

#include <gtest/gtest.h>

namespace langaux {
namespace {

class LabelsTest : public ::testing::Test {
 protected:
  LabelsTest()
      : vocab_(Vocabulary::Default()),
        dep_(DependencyMatrix::Default()),
        classes_(ClassList::Default()),
        parser_(ParserLexicons::Default()) {}

  AuxTargets Targets(const std::string &text,
                     std::optional<std::string> referent = std::nullopt) {
    return GenerateTargets(parser_.ParseText(text, referent), referent,
                           {&vocab_, &dep_, &classes_});
  }
  int Class(const char *name) { return *classes_.IndexOf(name); }

  Vocabulary vocab_;
  DependencyMatrix dep_;
  ClassList classes_;
  Parser parser_;
};

TEST_F(LabelsTest, LeftOfTripleYieldsWorkedTargets) {
  const AuxTargets t = Targets("the chair is to the left of the table.");
  ASSERT_EQ(t.relation_items.size(), 1u);
  const RelationItem &r = t.relation_items[0];
  EXPECT_EQ(r.subject_class, Class("chair"));
  EXPECT_EQ(r.object_class, Class("table"));
  EXPECT_EQ(r.relation, *vocab_.RelationIndex("left of"));
  EXPECT_EQ(r.targets, RelationTargets("left of", vocab_, dep_));
  EXPECT_EQ(r.targets[*vocab_.RelationIndex("facing")], 0.5);
}

TEST_F(LabelsTest, TextClassFromFirstEntity) {
  const AuxTargets t = Targets("a couch is next to the bed.");
  EXPECT_EQ(t.text_class, Class("sofa"));
  EXPECT_FALSE(t.referent_conflict);
}

TEST_F(LabelsTest, ReferentNameWinsOnConflict) {
  const AuxTargets t = Targets("the table is next to the bed.", "office_chair");
  EXPECT_EQ(t.text_class, Class("chair"));
  EXPECT_TRUE(t.referent_conflict);
}

TEST_F(LabelsTest, ReferentNameWithoutEntities) {
  const AuxTargets t = Targets("...", "kitchen_cabinets");
  EXPECT_EQ(t.text_class, Class("cabinet"));
  EXPECT_TRUE(t.relation_items.empty());
  EXPECT_TRUE(t.attribute_items.empty());
}

TEST_F(LabelsTest, NothingParsedIsOthers) {
  EXPECT_EQ(Targets("").text_class, classes_.others());
}

TEST_F(LabelsTest, RelationsOutsideVocabularyAreDropped) {
  const AuxTargets t = Targets("the chair is near the table.");
  EXPECT_TRUE(t.relation_items.empty());
}

TEST_F(LabelsTest, OneAttributeItemPerOccurrence) {
  const AuxTargets t =
      Targets("a small wooden cabinet is next to the zebra-striped bed.");
  ASSERT_EQ(t.attribute_items.size(), 2u);
  EXPECT_EQ(t.attribute_items[0].entity_class, Class("cabinet"));
  EXPECT_EQ(t.attribute_items[0].attribute, vocab_.AttributeIndex("small"));
  EXPECT_EQ(t.attribute_items[1].attribute, vocab_.AttributeIndex("wooden"));
}

TEST_F(LabelsTest, UnlistedAttributeMapsToOthers) {
  Vocabulary small({"next to"}, {{"red", AttributeGroup::kColor}});
  const DependencyMatrix dep = DependencyMatrix::FromText("next to : I\n");
  const AuxTargets t = GenerateTargets(
      parser_.ParseText("a white chair is next to a red table."), std::nullopt,
      {&small, &dep, &classes_});
  ASSERT_EQ(t.attribute_items.size(), 2u);
  EXPECT_EQ(t.attribute_items[0].attribute, small.others_attribute());
  EXPECT_EQ(t.attribute_items[1].attribute, 0);
  ASSERT_EQ(t.relation_items.size(), 1u);
  EXPECT_EQ(t.relation_items[0].targets, std::vector<double>{1.0});
}

TEST_F(LabelsTest, PronounSubjectCarriesReferentClass) {
  const AuxTargets t =
      Targets("This is a brown chair. It is located under the whiteboard.");
  ASSERT_EQ(t.relation_items.size(), 1u);
  EXPECT_EQ(t.relation_items[0].subject_class, Class("chair"));
  EXPECT_EQ(t.relation_items[0].relation, *vocab_.RelationIndex("under"));
}

TEST(MatchReferentClassTest, Forms) {
  const ClassList c = ClassList::Default();
  EXPECT_EQ(MatchReferentClass("chair", c), *c.IndexOf("chair"));
  EXPECT_EQ(MatchReferentClass("Office_Chair", c), *c.IndexOf("chair"));
  EXPECT_EQ(MatchReferentClass("shower_curtain", c), *c.IndexOf("shower curtain"));
  EXPECT_EQ(MatchReferentClass("kitchen_cabinets", c), *c.IndexOf("cabinet"));
  EXPECT_EQ(MatchReferentClass("windows", c), *c.IndexOf("window"));
  EXPECT_EQ(MatchReferentClass("spaceship", c), c.others());
  EXPECT_EQ(MatchReferentClass("", c), c.others());
}

}  // namespace
}  // namespace langaux
