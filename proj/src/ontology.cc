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

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace langaux {

Vocabulary::Vocabulary(
    std::vector<std::string> relations,
    std::vector<std::pair<std::string, AttributeGroup>> attributes)
    : relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const std::string &r : relations_) {
    if (!seen.insert(r).second) throw ConfigError("duplicate relation " + r);
  }
  seen.clear();
  for (auto &[name, group] : attributes) {
    if (name == kOthers) continue;
    if (!seen.insert(name).second) throw ConfigError("duplicate attribute " + name);
    attributes_.push_back(name);
    groups_[name] = group;
  }
  attributes_.emplace_back(kOthers);
}

Vocabulary Vocabulary::FromText(std::string_view text) {
  std::vector<std::string> relations;
  std::vector<std::pair<std::string, AttributeGroup>> attributes;
  for (const ConfigSection &section : ParseSectionedConfig(text, "=")) {
    if (section.name == "relations") {
      for (const auto &[key, value] : section.entries) relations.push_back(key);
    } else if (section.name.rfind("attributes.", 0) == 0) {
      auto group = ParseAttributeGroup(section.name.substr(11));
      if (!group) throw ConfigError("unknown attribute group: " + section.name);
      for (const auto &[key, value] : section.entries) {
        attributes.emplace_back(key, *group);
      }
    } else {
      throw ConfigError("unknown vocabulary section: " + section.name);
    }
  }
  if (relations.empty()) throw ConfigError("vocabulary has no relations");
  return Vocabulary(std::move(relations), std::move(attributes));
}

Vocabulary Vocabulary::FromFile(const std::string &path) {
  return FromText(ReadTextFile(path));
}

Vocabulary Vocabulary::Default() {
  return FromText(EmbeddedFile("vocabulary.txt"));
}

std::optional<int> Vocabulary::RelationIndex(std::string_view relation) const {
  auto it = std::find(relations_.begin(), relations_.end(), relation);
  if (it == relations_.end()) return std::nullopt;
  return static_cast<int>(it - relations_.begin());
}

int Vocabulary::AttributeIndex(std::string_view lemma) const {
  auto it = std::find(attributes_.begin(), attributes_.end() - 1, lemma);
  return static_cast<int>(it - attributes_.begin());
}

std::optional<AttributeGroup> Vocabulary::GroupOf(
    std::string_view attribute) const {
  auto it = groups_.find(std::string(attribute));
  if (it == groups_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Vocabulary::WithRelationPrefix(int k) const {
  if (k < 1 || k > num_relations()) {
    throw std::invalid_argument("relation prefix out of range");
  }
  Vocabulary v = *this;
  v.relations_.resize(k);
  return v;
}

namespace {

std::vector<std::string> SelectAbove(const std::map<std::string, long> &freq,
                                     long threshold) {
  std::vector<std::pair<std::string, long>> items;
  for (const auto &[name, count] : freq) {
    if (count > threshold) items.emplace_back(name, count);
  }
  std::sort(items.begin(), items.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (auto &item : items) out.push_back(std::move(item.first));
  return out;
}

}  // namespace

Vocabulary SelectVocabulary(const FrequencyTables &freq, long rel_threshold,
                            long attr_threshold,
                            const ParserLexicons &lexicons) {
  if (rel_threshold < 0 || attr_threshold < 0) {
    throw std::invalid_argument("thresholds must be non-negative");
  }
  std::vector<std::string> relations = SelectAbove(freq.relations,
                                                   rel_threshold);
  if (relations.empty()) {
    throw SelectionError("no relation occurs more than rel_threshold=" +
                         std::to_string(rel_threshold) + " times");
  }
  std::vector<std::pair<std::string, AttributeGroup>> attributes;
  for (std::string &a : SelectAbove(freq.attributes, attr_threshold)) {
    AttributeGroup group = AttributeGroup::kColor;
    if (const AttributeEntry *e = lexicons.FindAttribute(a)) group = e->group;
    attributes.emplace_back(std::move(a), group);
  }
  if (attributes.empty()) {
    throw SelectionError("no attribute occurs more than attr_threshold=" +
                         std::to_string(attr_threshold) + " times");
  }
  return Vocabulary(std::move(relations), std::move(attributes));
}

DependencyMatrix::DependencyMatrix(std::vector<std::string> names,
                                   std::vector<std::vector<Dependency>> entries)
    : names_(std::move(names)), entries_(std::move(entries)) {
  Validate();
}

void DependencyMatrix::Validate() const {
  const int n = size();
  if (static_cast<int>(entries_.size()) != n) {
    throw ConfigError("dependency matrix must be square");
  }
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(entries_[r].size()) != n) {
      throw ConfigError("dependency matrix row '" + names_[r] + "' has " +
                        std::to_string(entries_[r].size()) + " cells, want " +
                        std::to_string(n));
    }
    if (entries_[r][r] != Dependency::kImplies) {
      throw ConfigError("dependency matrix diagonal must be I at '" +
                        names_[r] + "'");
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int q = 0; q < n; ++q) {
      if ((entries_[r][q] == Dependency::kExcludes) !=
          (entries_[q][r] == Dependency::kExcludes)) {
        throw ConfigError("E entries must be symmetric: '" + names_[r] +
                          "' vs '" + names_[q] + "'");
      }
    }
  }
}

DependencyMatrix DependencyMatrix::FromText(
    std::string_view text, const std::vector<std::string> *order) {
  std::vector<std::string> names;
  std::vector<std::vector<Dependency>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("dependency matrix line " + std::to_string(line_no) +
                        ": expected 'name : cells'");
    }
    std::string name = line.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    std::istringstream cells(line.substr(colon + 1));
    std::vector<Dependency> row;
    std::string cell;
    while (cells >> cell) {
      if (cell == "|") continue;
      if (cell == "I") {
        row.push_back(Dependency::kImplies);
      } else if (cell == "E") {
        row.push_back(Dependency::kExcludes);
      } else if (cell == "U") {
        row.push_back(Dependency::kUndetermined);
      } else {
        throw ConfigError("dependency matrix line " + std::to_string(line_no) +
                          ": bad cell '" + cell + "'");
      }
    }
    names.push_back(std::move(name));
    rows.push_back(std::move(row));
  }
  if (names.empty()) throw ConfigError("empty dependency matrix");
  DependencyMatrix m(std::move(names), std::move(rows));
  if (order != nullptr && *order != m.names_) {
    throw ConfigError("dependency matrix rows do not follow vocabulary order");
  }
  return m;
}

DependencyMatrix DependencyMatrix::FromFile(
    const std::string &path, const std::vector<std::string> *order) {
  return FromText(ReadTextFile(path), order);
}

DependencyMatrix DependencyMatrix::Default() {
  return FromText(EmbeddedFile("dep_matrix.txt"));
}

DependencyMatrix DependencyMatrix::Prefix(int k) const {
  if (k < 1 || k > size()) throw std::invalid_argument("prefix out of range");
  std::vector<std::string> names(names_.begin(), names_.begin() + k);
  std::vector<std::vector<Dependency>> rows;
  for (int r = 0; r < k; ++r) {
    rows.emplace_back(entries_[r].begin(), entries_[r].begin() + k);
  }
  return DependencyMatrix(std::move(names), std::move(rows));
}

DependencyMatrix DependencyMatrix::Reordered(
    const std::vector<std::string> &order) const {
  std::vector<int> index;
  for (const std::string &name : order) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      throw ConfigError("relation '" + name + "' missing from matrix");
    }
    index.push_back(static_cast<int>(it - names_.begin()));
  }
  std::vector<std::vector<Dependency>> rows;
  for (int r : index) {
    std::vector<Dependency> row;
    for (int q : index) row.push_back(entries_[r][q]);
    rows.push_back(std::move(row));
  }
  return DependencyMatrix(order, std::move(rows));
}

std::vector<double> RelationTargets(std::string_view stated,
                                    const Vocabulary &vocab,
                                    const DependencyMatrix &dep) {
  if (dep.names() != vocab.relations()) {
    throw std::invalid_argument(
        "dependency matrix does not match the relation vocabulary");
  }
  const auto r = vocab.RelationIndex(stated);
  if (!r) {
    throw std::invalid_argument("relation '" + std::string(stated) +
                                "' is not in the vocabulary");
  }
  std::vector<double> y(vocab.num_relations());
  for (int q = 0; q < vocab.num_relations(); ++q) {
    switch (dep.entry(*r, q)) {
      case Dependency::kImplies: y[q] = 1.0; break;
      case Dependency::kExcludes: y[q] = 0.0; break;
      case Dependency::kUndetermined: y[q] = 0.5; break;
    }
  }
  return y;
}

ClassList::ClassList(std::vector<std::string> classes,
                     std::map<std::string, std::string> synonyms)
    : classes_(std::move(classes)), synonyms_(std::move(synonyms)) {
  classes_.erase(std::remove(classes_.begin(), classes_.end(), kOthers),
                 classes_.end());
  std::set<std::string> seen(classes_.begin(), classes_.end());
  if (seen.size() != classes_.size()) throw ConfigError("duplicate class");
  for (const auto &[lemma, target] : synonyms_) {
    if (target != kOthers && seen.count(target) == 0) {
      throw ConfigError("synonym '" + lemma + "' targets unknown class '" +
                        target + "'");
    }
  }
  classes_.emplace_back(kOthers);
}

ClassList ClassList::FromText(std::string_view text) {
  std::vector<std::string> classes;
  std::map<std::string, std::string> synonyms;
  for (const ConfigSection &section : ParseSectionedConfig(text, "->")) {
    if (section.name == "classes") {
      for (const auto &[key, value] : section.entries) classes.push_back(key);
    } else if (section.name == "synonyms") {
      for (const auto &[key, value] : section.entries) {
        if (value.empty()) throw ConfigError("synonym without target: " + key);
        synonyms[key] = value;
      }
    } else {
      throw ConfigError("unknown class-list section: " + section.name);
    }
  }
  if (classes.empty()) throw ConfigError("class list is empty");
  return ClassList(std::move(classes), std::move(synonyms));
}

ClassList ClassList::FromFile(const std::string &path) {
  return FromText(ReadTextFile(path));
}

ClassList ClassList::Default() { return FromText(EmbeddedFile("classes.txt")); }

std::optional<int> ClassList::IndexOf(std::string_view class_name) const {
  auto it = std::find(classes_.begin(), classes_.end(), class_name);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<int>(it - classes_.begin());
}

int ClassList::Match(std::string_view head_noun) const {
  if (auto exact = IndexOf(head_noun); exact && *exact != others()) {
    return *exact;
  }
  if (auto it = synonyms_.find(std::string(head_noun)); it != synonyms_.end()) {
    if (auto id = IndexOf(it->second)) return *id;
  }
  return others();
}

}  // namespace langaux
