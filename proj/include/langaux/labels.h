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

#ifndef LANGAUX_LABELS_H_
#define LANGAUX_LABELS_H_

#include <optional>
#include <string>
#include <vector>

#include "langaux/ontology.h"
#include "langaux/parser.h"

namespace langaux {

struct RelationItem {
  int subject_class = 0;
  int object_class = 0;
  // Index of the stated relation in the vocabulary.
  int relation = 0;
  // Per-class targets in {0, 0.5, 1}.
  std::vector<double> targets;

  bool operator==(const RelationItem &) const = default;
};

struct AttributeItem {
  int entity_class = 0;
  // Attribute class in [0, K_a]; K_a is "others".
  int attribute = 0;

  bool operator==(const AttributeItem &) const = default;
};

// Supervision for the text, relation and attribute classifiers derived from
// one description.
struct AuxTargets {
  int text_class = 0;
  std::vector<RelationItem> relation_items;
  std::vector<AttributeItem> attribute_items;
  // The referent name and the first parsed entity map to different classes;
  // the referent name wins.
  bool referent_conflict = false;

  bool operator==(const AuxTargets &) const = default;
};

struct LabelContext {
  const Vocabulary *vocab;
  const DependencyMatrix *dep;
  const ClassList *classes;
};

// Text class from the referent name if present, otherwise the first entity.
// One relation item per triple whose canonical relation is in the
// vocabulary, one attribute item per (entity, attribute) occurrence.
AuxTargets GenerateTargets(const SceneGraph &graph,
                           const std::optional<std::string> &referent_name,
                           const LabelContext &ctx);

// Class of a referent name such as "office_chair" (matched on its last word).
int MatchReferentClass(const std::string &referent_name,
                       const ClassList &classes);

}  // namespace langaux

#endif  // LANGAUX_LABELS_H_
