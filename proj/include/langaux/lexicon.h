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

#ifndef LANGAUX_LEXICON_H_
#define LANGAUX_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace langaux {

// Raised for malformed configuration files and inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Pos { kNoun, kAdj, kVerb, kPrep, kDet, kPron, kNum, kOther };

std::string_view PosName(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);

enum class AttributeGroup { kColor, kShape, kSize };

std::string_view AttributeGroupName(AttributeGroup group);
std::optional<AttributeGroup> ParseAttributeGroup(std::string_view name);

struct RelationPhrase {
  std::vector<std::string> tokens;
  std::string canonical;
};

struct AttributeEntry {
  std::string canonical;
  AttributeGroup group;
};

// Sectioned "key / key = value" text file reader shared by the lexicon,
// vocabulary and class-list loaders. Lines starting with '#' are comments.
struct ConfigSection {
  std::string name;
  // (key, value) pairs in file order; value is empty for bare lines.
  std::vector<std::pair<std::string, std::string>> entries;
};
std::vector<ConfigSection> ParseSectionedConfig(std::string_view text,
                                                std::string_view separator);

std::string ReadTextFile(const std::string &path);

// Word lists used by the rule-based parser.
class ParserLexicons {
 public:
  // Parses the lexicon config format (see data/lexicon.cfg).
  static ParserLexicons FromText(std::string_view text);
  static ParserLexicons FromFile(const std::string &path);
  // The lexicon shipped with the library.
  static ParserLexicons Default();

  // Relation phrases starting with `first`, longest first.
  const std::vector<RelationPhrase> &PhrasesStartingWith(
      std::string_view first) const;
  const std::vector<RelationPhrase> &relations() const { return relations_; }
  // Canonical relation names in first-seen file order.
  const std::vector<std::string> &canonical_relations() const {
    return canonical_relations_;
  }

  const AttributeEntry *FindAttribute(std::string_view word) const;
  const std::map<std::string, AttributeEntry> &attributes() const {
    return attributes_;
  }
  bool IsPronoun(std::string_view word) const;
  const std::set<std::string> &pronouns() const { return pronouns_; }

  // Part of speech from overrides or the built-in table, if known.
  std::optional<Pos> LookupPos(std::string_view word) const;
  // True for words that can head a noun phrase (nouns, including words that
  // are also attribute adjectives such as "light").
  bool IsNoun(std::string_view word) const;

 private:
  std::vector<RelationPhrase> relations_;
  std::vector<std::string> canonical_relations_;
  std::unordered_map<std::string, std::vector<RelationPhrase>> by_first_;
  std::map<std::string, AttributeEntry> attributes_;
  std::set<std::string> pronouns_;
  std::unordered_map<std::string, Pos> overrides_;
};

// Built-in part-of-speech table for function words, common verbs and indoor
// object nouns.
const std::unordered_map<std::string, Pos> &BasePosTable();

namespace embedded {
// Contents of a shipped data file ("lexicon.cfg", "vocabulary.txt", ...).
std::string_view Lookup(std::string_view name);
}  // namespace embedded

std::string EmbeddedFile(std::string_view name);

}  // namespace langaux

#endif  // LANGAUX_LEXICON_H_
