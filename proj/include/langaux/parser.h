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

#ifndef LANGAUX_PARSER_H_
#define LANGAUX_PARSER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "langaux/lexicon.h"
#include "langaux/text.h"

namespace langaux {

struct TaggedToken {
  std::string text;
  std::string lemma;
  Pos pos = Pos::kOther;
};

// Half-open token index range.
struct TokenSpan {
  int begin = 0;
  int end = 0;

  bool Overlaps(const TokenSpan &other) const {
    return begin < other.end && other.begin < end;
  }
  bool operator==(const TokenSpan &) const = default;
};

// A noun phrase such as "a small armchair". The span runs from the first
// token of the phrase through the head noun.
struct EntityMention {
  std::string head_noun;
  std::vector<std::string> attributes;
  TokenSpan span;
  int sentence = 0;

  bool operator==(const EntityMention &) const = default;
};

// (subject, relation, object); subject and object index SceneGraph::entities.
struct RelationTriple {
  int subject = -1;
  // Lemmas of the matched phrase as they occur in the text.
  std::string relation_phrase;
  // Canonical relation the phrase folds onto ("to the left of" -> "left of").
  std::string relation;
  int object = -1;
  TokenSpan phrase_span;

  bool operator==(const RelationTriple &) const = default;
};

struct SceneGraph {
  std::vector<std::string> tokens;
  std::vector<EntityMention> entities;
  std::vector<RelationTriple> triples;
  // Number of lexicon relation phrases found in the description.
  int relation_phrase_count = 0;
  bool parse_ok = false;

  bool HasAttributes() const;
  bool operator==(const SceneGraph &) const = default;
};

// parse_ok: when the description contains a relation phrase, at least one
// triple or attribute must have been extracted.
bool ComputeParseOk(const SceneGraph &graph);

// Deterministic lexicon + pattern parser. All methods are const and safe to
// call concurrently.
class Parser {
 public:
  explicit Parser(ParserLexicons lexicons);

  const ParserLexicons &lexicons() const { return lexicons_; }

  // Context-sensitive part-of-speech tags for one token range. Tokens inside
  // relation phrases are tagged PREP.
  std::vector<TaggedToken> Tag(const std::vector<std::string> &tokens) const;

  // Replaces pronouns outside the first sentence with the referent noun
  // phrase: the referent name when given, else the first noun phrase of the
  // first sentence.
  Description ResolveCoreference(Description desc) const;

  // Extracts entities and relation triples from an already resolved
  // description.
  SceneGraph Parse(const Description &desc) const;

  // Tokenize, resolve coreference and parse.
  SceneGraph ParseText(std::string_view text,
                       std::optional<std::string> referent_name =
                           std::nullopt) const;

 private:
  struct Analysis;
  Analysis Analyze(const std::vector<std::string> &tokens, int begin,
                   int end) const;

  ParserLexicons lexicons_;
};

}  // namespace langaux

#endif  // LANGAUX_PARSER_H_
