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

#include <algorithm>
#include <cctype>

#include "langaux/text.h"

namespace langaux {

int MatchReferentClass(const std::string &referent_name,
                       const ClassList &classes) {
  std::string name = referent_name;
  std::replace(name.begin(), name.end(), '_', ' ');
  for (char &c : name) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (auto exact = classes.IndexOf(name)) return *exact;
  Description d = NormalizeAndTokenize(name);
  if (d.tokens.empty()) return classes.others();
  std::string head = d.tokens.back();
  int id = classes.Match(head);
  if (id == classes.others() && head.size() > 1 && head.back() == 's') {
    id = classes.Match(head.substr(0, head.size() - 1));
  }
  return id;
}

AuxTargets GenerateTargets(const SceneGraph &graph,
                           const std::optional<std::string> &referent_name,
                           const LabelContext &ctx) {
  AuxTargets targets;
  const ClassList &classes = *ctx.classes;
  const bool has_referent = referent_name && !referent_name->empty();
  targets.text_class = has_referent
                           ? MatchReferentClass(*referent_name, classes)
                           : classes.others();
  if (graph.entities.empty()) return targets;

  std::vector<int> entity_class;
  entity_class.reserve(graph.entities.size());
  for (const EntityMention &e : graph.entities) {
    entity_class.push_back(classes.Match(e.head_noun));
  }

  if (has_referent) {
    targets.referent_conflict = targets.text_class != entity_class.front();
  } else {
    targets.text_class = entity_class.front();
  }

  for (const RelationTriple &t : graph.triples) {
    const auto r = ctx.vocab->RelationIndex(t.relation);
    if (!r) continue;
    RelationItem item;
    item.subject_class = entity_class[t.subject];
    item.object_class = entity_class[t.object];
    item.relation = *r;
    item.targets = RelationTargets(t.relation, *ctx.vocab, *ctx.dep);
    targets.relation_items.push_back(std::move(item));
  }

  for (size_t i = 0; i < graph.entities.size(); ++i) {
    for (const std::string &a : graph.entities[i].attributes) {
      targets.attribute_items.push_back(
          {entity_class[i], ctx.vocab->AttributeIndex(a)});
    }
  }
  return targets;
}

}  // namespace langaux
