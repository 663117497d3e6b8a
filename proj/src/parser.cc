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

#include "langaux/parser.h"

#include <algorithm>
#include <cctype>
#include <utility>

namespace langaux {
namespace {

bool IsNumber(std::string_view tok) {
  if (tok.empty()) return false;
  bool digit = false;
  for (char c : tok) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

bool IsPunctuation(std::string_view tok) {
  return !tok.empty() && std::none_of(tok.begin(), tok.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c));
  });
}

bool IsBeForm(std::string_view tok) {
  return tok == "is" || tok == "are" || tok == "was" || tok == "were" ||
         tok == "be" || tok == "been" || tok == "being" || tok == "am";
}

bool IsAuxiliary(std::string_view tok) {
  return IsBeForm(tok) || tok == "can" || tok == "could" || tok == "will" ||
         tok == "would" || tok == "should" || tok == "may" || tok == "might";
}

bool IsLinkingAdverb(std::string_view tok) {
  static constexpr std::string_view kAdverbs[] = {
      "directly", "just",  "also",   "right",    "slightly", "immediately",
      "very",     "exactly", "pretty", "fairly", "partly",   "mostly",
      "only",     "really", "quite",  "somewhat", "almost",  "kind",
      "sort"};
  return std::find(std::begin(kAdverbs), std::end(kAdverbs), tok) !=
         std::end(kAdverbs);
}

bool IsDemonstrative(std::string_view tok) {
  return tok == "this" || tok == "that" || tok == "these" || tok == "those";
}

// Plural to singular candidates, most specific rule first.
std::vector<std::string> SingularCandidates(const std::string &w) {
  std::vector<std::string> out;
  auto ends_with = [&](std::string_view suffix) {
    return w.size() > suffix.size() + 1 &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("ies")) out.push_back(w.substr(0, w.size() - 3) + "y");
  if (ends_with("ves")) {
    out.push_back(w.substr(0, w.size() - 3) + "f");
    out.push_back(w.substr(0, w.size() - 3) + "fe");
  }
  if (ends_with("es")) out.push_back(w.substr(0, w.size() - 2));
  if (ends_with("s") && !ends_with("ss") && !ends_with("us") &&
      !ends_with("is")) {
    out.push_back(w.substr(0, w.size() - 1));
  }
  return out;
}

std::string GuessSingular(const std::string &w) {
  auto ends_with = [&](std::string_view suffix) {
    return w.size() > suffix.size() + 1 &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends_with("ches") || ends_with("shes") || ends_with("xes") ||
      ends_with("sses")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with("s") && !ends_with("ss") && !ends_with("us") &&
      !ends_with("is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

struct TokenInfo {
  TaggedToken tag;
  bool unknown = false;
  bool noun_capable = false;
  int relation = -1;  // index into Analysis::relations, -1 if none
  bool stripped = false;
};

struct RelationMatch {
  int begin = 0;  // local token indices
  int end = 0;
  const RelationPhrase *phrase = nullptr;
};

struct Chunk {
  int begin = 0;
  int head = 0;
  std::vector<std::string> attributes;
  std::string head_lemma;
};

}  // namespace

struct Parser::Analysis {
  int offset = 0;
  std::vector<TokenInfo> info;
  std::vector<RelationMatch> relations;
  std::vector<Chunk> chunks;
};

bool SceneGraph::HasAttributes() const {
  return std::any_of(entities.begin(), entities.end(),
                     [](const EntityMention &e) {
                       return !e.attributes.empty();
                     });
}

bool ComputeParseOk(const SceneGraph &graph) {
  if (graph.relation_phrase_count == 0) return true;
  return !graph.triples.empty() || graph.HasAttributes();
}

Parser::Parser(ParserLexicons lexicons) : lexicons_(std::move(lexicons)) {}

Parser::Analysis Parser::Analyze(const std::vector<std::string> &tokens,
                                 int begin, int end) const {
  Analysis a;
  a.offset = begin;
  const int n = end - begin;
  a.info.resize(n);
  auto tok = [&](int i) -> const std::string & { return tokens[begin + i]; };

  // Relation phrases, longest match first, left to right.
  for (int i = 0; i < n;) {
    const RelationPhrase *matched = nullptr;
    for (const RelationPhrase &phrase : lexicons_.PhrasesStartingWith(tok(i))) {
      const int len = static_cast<int>(phrase.tokens.size());
      if (i + len > n) continue;
      bool ok = true;
      for (int k = 0; k < len && ok; ++k) ok = tok(i + k) == phrase.tokens[k];
      if (ok) {
        matched = &phrase;
        break;
      }
    }
    if (matched == nullptr) {
      ++i;
      continue;
    }
    const int len = static_cast<int>(matched->tokens.size());
    const int index = static_cast<int>(a.relations.size());
    a.relations.push_back({i, i + len, matched});
    for (int k = i; k < i + len; ++k) a.info[k].relation = index;
    i += len;
  }

  // Context-free tags.
  for (int i = 0; i < n; ++i) {
    TokenInfo &t = a.info[i];
    t.tag.text = tok(i);
    t.tag.lemma = tok(i);
    if (t.relation >= 0) {
      t.tag.pos = Pos::kPrep;
      continue;
    }
    if (IsNumber(tok(i))) {
      t.tag.pos = Pos::kNum;
      continue;
    }
    if (IsPunctuation(tok(i))) {
      t.tag.pos = Pos::kOther;
      continue;
    }
    if (auto pos = lexicons_.LookupPos(tok(i))) {
      t.tag.pos = *pos;
      if (const AttributeEntry *attr = lexicons_.FindAttribute(tok(i));
          attr != nullptr && *pos == Pos::kAdj) {
        t.tag.lemma = attr->canonical;
      }
      t.noun_capable = *pos == Pos::kNoun || lexicons_.IsNoun(tok(i));
      continue;
    }
    bool found = false;
    for (const std::string &cand : SingularCandidates(tok(i))) {
      if (lexicons_.IsNoun(cand)) {
        t.tag.pos = Pos::kNoun;
        t.tag.lemma = cand;
        t.noun_capable = true;
        found = true;
        break;
      }
    }
    if (!found) {
      t.unknown = true;
      t.tag.pos = Pos::kOther;
    }
  }

  auto material = [&](int i) {
    if (i < 0 || i >= n) return false;
    const TokenInfo &t = a.info[i];
    if (t.relation >= 0) return false;
    return t.unknown || t.noun_capable || t.tag.pos == Pos::kAdj ||
           t.tag.pos == Pos::kNoun || t.tag.pos == Pos::kNum;
  };

  // Context-dependent readings of demonstratives, "one" and "that".
  for (int i = 0; i < n; ++i) {
    TokenInfo &t = a.info[i];
    if (t.relation >= 0) continue;
    const bool prev_nounish =
        i > 0 && a.info[i - 1].relation < 0 &&
        (a.info[i - 1].noun_capable || a.info[i - 1].unknown);
    if (tok(i) == "that" && prev_nounish) {
      t.tag.pos = Pos::kPron;  // relative marker
    } else if (IsDemonstrative(tok(i))) {
      t.tag.pos = material(i + 1) ? Pos::kDet : Pos::kPron;
    } else if (tok(i) == "one") {
      t.tag.pos = material(i + 1) ? Pos::kNum : Pos::kPron;
    }
  }

  // Existential opener.
  if (n >= 2 && tok(0) == "there" && IsBeForm(tok(1))) {
    a.info[0].stripped = true;
    a.info[1].stripped = true;
  }

  // Noun-phrase chunks: DET? (ADJ | NOUN | NUM | unknown)* NOUN.
  for (int i = 0; i < n;) {
    const TokenInfo &t = a.info[i];
    const bool det = t.relation < 0 && t.tag.pos == Pos::kDet;
    if (!det && !material(i)) {
      ++i;
      continue;
    }
    int j = i + (det ? 1 : 0);
    while (j < n && material(j)) ++j;
    int head = -1;
    for (int k = i + (det ? 1 : 0); k < j; ++k) {
      if (a.info[k].noun_capable || a.info[k].tag.pos == Pos::kNoun) head = k;
    }
    if (det && j > i + 1 && a.info[j - 1].unknown) head = j - 1;
    if (head < 0) {
      i = std::max(j, i + 1);
      continue;
    }
    Chunk chunk;
    chunk.begin = i;
    chunk.head = head;
    TokenInfo &h = a.info[head];
    if (h.unknown) {
      h.unknown = false;
      h.tag.pos = Pos::kNoun;
      h.tag.lemma = GuessSingular(h.tag.text);
    } else {
      h.tag.pos = Pos::kNoun;
      if (!lexicons_.IsNoun(h.tag.lemma)) {
        // Attribute adjective read as a noun ("the light"): use the surface.
        h.tag.lemma = h.tag.text;
      }
    }
    chunk.head_lemma = h.tag.lemma;
    for (int k = i; k < head; ++k) {
      const TokenInfo &m = a.info[k];
      if (m.tag.pos != Pos::kAdj) continue;
      if (lexicons_.FindAttribute(m.tag.text) == nullptr) continue;
      if (std::find(chunk.attributes.begin(), chunk.attributes.end(),
                    m.tag.lemma) == chunk.attributes.end()) {
        chunk.attributes.push_back(m.tag.lemma);
      }
    }
    for (int k = i; k < head; ++k) {
      if (a.info[k].unknown) a.info[k].unknown = false;  // dropped modifier
    }
    a.chunks.push_back(std::move(chunk));
    i = head + 1;
  }
  return a;
}

std::vector<TaggedToken> Parser::Tag(
    const std::vector<std::string> &tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto &[b, e] : SentenceRanges(tokens)) {
    Analysis a = Analyze(tokens, b, e);
    for (TokenInfo &t : a.info) out.push_back(std::move(t.tag));
  }
  return out;
}

Description Parser::ResolveCoreference(Description desc) const {
  const auto sentences = SentenceRanges(desc.tokens);
  if (sentences.size() < 2) return desc;

  bool has_pronoun = false;
  for (size_t s = 1; s < sentences.size(); ++s) {
    for (int i = sentences[s].first; i < sentences[s].second; ++i) {
      if (lexicons_.IsPronoun(desc.tokens[i])) has_pronoun = true;
    }
  }
  if (!has_pronoun) return desc;

  // Referent noun phrase, always introduced by "the".
  std::vector<std::string> phrase;
  if (desc.referent_name && !desc.referent_name->empty()) {
    std::string name = *desc.referent_name;
    std::replace(name.begin(), name.end(), '_', ' ');
    Description ref = NormalizeAndTokenize(name);
    phrase.push_back("the");
    for (const std::string &t : ref.tokens) {
      if (IsSentenceEnd(t) || t == "the" || t == "a" || t == "an") continue;
      phrase.push_back(t);
    }
    if (phrase.size() == 1) phrase.clear();
  }
  if (phrase.empty()) {
    Analysis first =
        Analyze(desc.tokens, sentences[0].first, sentences[0].second);
    if (!first.chunks.empty()) {
      const Chunk &c = first.chunks.front();
      phrase.push_back("the");
      for (int k = c.begin; k <= c.head; ++k) {
        const TokenInfo &t = first.info[k];
        if (t.tag.pos == Pos::kDet || t.tag.pos == Pos::kNum) continue;
        phrase.push_back(t.tag.text);
      }
    }
  }
  if (phrase.empty()) {
    desc.coreference_unresolved = true;
    return desc;
  }

  std::vector<std::string> out(desc.tokens.begin(),
                               desc.tokens.begin() + sentences[0].second);
  for (size_t s = 1; s < sentences.size(); ++s) {
    const auto [b, e] = sentences[s];
    Analysis a = Analyze(desc.tokens, b, e);
    for (int i = b; i < e; ++i) {
      const std::string &t = desc.tokens[i];
      const TokenInfo &info = a.info[i - b];
      if (!lexicons_.IsPronoun(t) || info.relation >= 0) {
        out.push_back(t);
        continue;
      }
      const bool prev_det_or_adj =
          i > b && (a.info[i - b - 1].tag.pos == Pos::kDet ||
                    a.info[i - b - 1].tag.pos == Pos::kAdj);
      if (IsDemonstrative(t) && info.tag.pos == Pos::kDet) {
        out.push_back("the");
      } else if (t == "that" && info.tag.pos == Pos::kPron && i > b &&
                 (a.info[i - b - 1].noun_capable ||
                  a.info[i - b - 1].tag.pos == Pos::kNoun)) {
        // Relative "that" is dropped: "the desk that is ..." reads as
        // "the desk is ...".
      } else if (t == "one" && prev_det_or_adj) {
        out.push_back(phrase.back());
      } else if (t == "one" && info.tag.pos == Pos::kNum) {
        out.push_back("a");
      } else {
        out.insert(out.end(), phrase.begin(), phrase.end());
      }
    }
  }
  desc.tokens = std::move(out);
  return desc;
}

SceneGraph Parser::Parse(const Description &desc) const {
  SceneGraph graph;
  graph.tokens = desc.tokens;
  const auto sentences = SentenceRanges(desc.tokens);
  for (size_t s = 0; s < sentences.size(); ++s) {
    const auto [b, e] = sentences[s];
    Analysis a = Analyze(desc.tokens, b, e);
    graph.relation_phrase_count += static_cast<int>(a.relations.size());

    const int first_entity = static_cast<int>(graph.entities.size());
    for (const Chunk &c : a.chunks) {
      EntityMention m;
      m.head_noun = c.head_lemma;
      m.attributes = c.attributes;
      m.span = {b + c.begin, b + c.head + 1};
      m.sentence = static_cast<int>(s);
      graph.entities.push_back(std::move(m));
    }

    // Linear item sequence: entities, relation phrases and leftover tokens.
    enum class Kind { kEntity, kRelation, kToken };
    struct Item {
      Kind kind;
      int index;  // entity id, relation match id or local token index
    };
    std::vector<Item> items;
    const int n = e - b;
    for (int i = 0, c = 0; i < n;) {
      if (c < static_cast<int>(a.chunks.size()) && a.chunks[c].begin == i) {
        items.push_back({Kind::kEntity, first_entity + c});
        i = a.chunks[c].head + 1;
        ++c;
      } else if (a.info[i].relation >= 0) {
        const RelationMatch &m = a.relations[a.info[i].relation];
        items.push_back({Kind::kRelation, a.info[i].relation});
        i = m.end;
      } else {
        if (!a.info[i].stripped) items.push_back({Kind::kToken, i});
        ++i;
      }
    }
    const int m = static_cast<int>(items.size());
    auto token_at = [&](int q) -> const std::string * {
      if (q < 0 || q >= m || items[q].kind != Kind::kToken) return nullptr;
      return &desc.tokens[b + items[q].index];
    };
    // Skips copulas, auxiliaries, adverbs and at most one participle.
    auto skip_linkers = [&](int q, bool *negated) {
      bool verb_used = false;
      while (const std::string *t = token_at(q)) {
        if (*t == "not" || *t == "never") {
          *negated = true;
          ++q;
        } else if (IsAuxiliary(*t) || IsLinkingAdverb(*t)) {
          ++q;
        } else if (!verb_used &&
                   a.info[items[q].index].tag.pos == Pos::kVerb &&
                   *t != "has" && *t != "have" && *t != "had") {
          verb_used = true;
          ++q;
        } else {
          break;
        }
      }
      return q;
    };
    auto emit = [&](int subj_item, int rel_item, int obj_item) {
      const RelationMatch &rm = a.relations[items[rel_item].index];
      RelationTriple triple;
      triple.subject = items[subj_item].index;
      triple.object = items[obj_item].index;
      triple.relation_phrase = JoinTokens(desc.tokens, b + rm.begin,
                                          b + rm.end);
      triple.relation = rm.phrase->canonical;
      triple.phrase_span = {b + rm.begin, b + rm.end};
      graph.triples.push_back(std::move(triple));
    };
    auto is_kind = [&](int q, Kind k) { return q < m && items[q].kind == k; };

    for (int p = 0; p < m; ++p) {
      if (items[p].kind != Kind::kEntity) continue;
      int q = p + 1;
      if (const std::string *t = token_at(q); t != nullptr && *t == ",") {
        const std::string *t2 = token_at(q + 1);
        if (t2 != nullptr && (*t2 == "which" || *t2 == "who")) q += 1;
      }
      if (const std::string *t = token_at(q);
          t != nullptr && (*t == "which" || *t == "who" || *t == "that")) {
        ++q;
      }
      bool negated = false;
      q = skip_linkers(q, &negated);
      if (!is_kind(q, Kind::kRelation) || !is_kind(q + 1, Kind::kEntity)) {
        continue;
      }
      if (!negated) emit(p, q, q + 1);
      // Coordinated relations share the subject: "X is next to Y and
      // facing Z".
      int r = q + 2;
      while (true) {
        int s2 = r;
        bool coordinated = false;
        while (const std::string *t = token_at(s2)) {
          if (*t == "and" || *t == ",") {
            coordinated = true;
            ++s2;
          } else {
            break;
          }
        }
        if (!coordinated) break;
        bool neg2 = false;
        s2 = skip_linkers(s2, &neg2);
        if (!is_kind(s2, Kind::kRelation) || !is_kind(s2 + 1, Kind::kEntity)) {
          break;
        }
        if (!neg2) emit(p, s2, s2 + 1);
        r = s2 + 2;
      }
    }
  }
  graph.parse_ok = ComputeParseOk(graph);
  return graph;
}

SceneGraph Parser::ParseText(std::string_view text,
                             std::optional<std::string> referent_name) const {
  Description desc = NormalizeAndTokenize(text, std::move(referent_name));
  return Parse(ResolveCoreference(std::move(desc)));
}

}  // namespace langaux
