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

#ifndef LANGAUX_ONTOLOGY_H_
#define LANGAUX_ONTOLOGY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "langaux/lexicon.h"

namespace langaux {

inline constexpr std::string_view kOthers = "others";

// Relation and attribute classes of the auxiliary classifiers. The attribute
// list always ends with the "others" class.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> relations,
             std::vector<std::pair<std::string, AttributeGroup>> attributes);

  // Parses the vocabulary file format (see data/vocabulary.txt).
  static Vocabulary FromText(std::string_view text);
  static Vocabulary FromFile(const std::string &path);
  static Vocabulary Default();

  const std::vector<std::string> &relations() const { return relations_; }
  // Attribute classes including the terminal "others".
  const std::vector<std::string> &attributes() const { return attributes_; }
  int num_relations() const { return static_cast<int>(relations_.size()); }
  int num_attribute_classes() const {
    return static_cast<int>(attributes_.size());
  }
  int others_attribute() const { return num_attribute_classes() - 1; }

  std::optional<int> RelationIndex(std::string_view relation) const;
  // Attribute class of a lemma; unlisted lemmas map to "others".
  int AttributeIndex(std::string_view lemma) const;
  std::optional<AttributeGroup> GroupOf(std::string_view attribute) const;

  // Keeps the first k relations.
  Vocabulary WithRelationPrefix(int k) const;

 private:
  std::vector<std::string> relations_;
  std::vector<std::string> attributes_;
  std::map<std::string, AttributeGroup> groups_;
};

struct FrequencyTables {
  std::map<std::string, long> relations;
  std::map<std::string, long> attributes;
};

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relations with count > rel_threshold and attributes with count >
// attr_threshold, each ordered by descending count with ties broken
// lexicographically. Attribute groups come from the lexicon. Throws
// SelectionError naming the threshold when a selection comes out empty.
Vocabulary SelectVocabulary(const FrequencyTables &freq, long rel_threshold,
                            long attr_threshold,
                            const ParserLexicons &lexicons);

enum class Dependency { kImplies, kExcludes, kUndetermined };

// Pairwise relation dependencies. entry(stated, other) describes what a
// stated relation says about another relation between the same objects.
class DependencyMatrix {
 public:
  // Parses rows of "name : cell cell ..." with cells in {I, E, U}. Validates
  // the diagonal and the symmetry of E; when `order` is given the row names
  // must match it exactly.
  static DependencyMatrix FromText(
      std::string_view text,
      const std::vector<std::string> *order = nullptr);
  static DependencyMatrix FromFile(
      const std::string &path, const std::vector<std::string> *order = nullptr);
  static DependencyMatrix Default();

  DependencyMatrix() = default;
  DependencyMatrix(std::vector<std::string> names,
                   std::vector<std::vector<Dependency>> entries);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string> &names() const { return names_; }
  Dependency entry(int stated, int other) const {
    return entries_[stated][other];
  }
  // Leading k x k block.
  DependencyMatrix Prefix(int k) const;
  // Rows/columns reordered to `order` (all names must exist).
  DependencyMatrix Reordered(const std::vector<std::string> &order) const;

 private:
  void Validate() const;

  std::vector<std::string> names_;
  std::vector<std::vector<Dependency>> entries_;
};

// Targets in {0, 0.5, 1} for every vocabulary relation given the stated one.
// Throws std::invalid_argument for relations outside the vocabulary.
std::vector<double> RelationTargets(std::string_view stated,
                                    const Vocabulary &vocab,
                                    const DependencyMatrix &dep);

// Dataset object classes plus a terminal "others" bucket.
class ClassList {
 public:
  ClassList() = default;
  ClassList(std::vector<std::string> classes,
            std::map<std::string, std::string> synonyms);

  static ClassList FromText(std::string_view text);
  static ClassList FromFile(const std::string &path);
  static ClassList Default();

  int size() const { return static_cast<int>(classes_.size()); }
  int others() const { return size() - 1; }
  const std::vector<std::string> &classes() const { return classes_; }
  const std::string &name(int id) const { return classes_.at(id); }

  // Exact class name, then synonym, then "others".
  int Match(std::string_view head_noun) const;
  std::optional<int> IndexOf(std::string_view class_name) const;

 private:
  std::vector<std::string> classes_;
  std::map<std::string, std::string> synonyms_;
};

}  // namespace langaux

#endif  // LANGAUX_ONTOLOGY_H_
