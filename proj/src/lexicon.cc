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

#include "langaux/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace langaux {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  for (char &c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

void AddWords(std::unordered_map<std::string, Pos> *table, Pos pos,
              std::initializer_list<const char *> words) {
  for (const char *w : words) table->emplace(w, pos);
}

std::unordered_map<std::string, Pos> BuildBaseTable() {
  std::unordered_map<std::string, Pos> t;
  AddWords(&t, Pos::kDet,
           {"the", "a", "an", "each", "every", "some", "another", "any",
            "its", "their", "his", "her", "my", "your", "our", "no", "all",
            "both", "this", "that", "these", "those"});
  AddWords(&t, Pos::kPron,
           {"it", "they", "them", "he", "she", "you", "we", "i", "which",
            "who", "whom", "what", "there", "here", "itself", "one"});
  // Copulas and auxiliaries.
  AddWords(&t, Pos::kVerb,
           {"is", "are", "was", "were", "be", "been", "being", "am", "can",
            "could", "will", "would", "should", "may", "might", "do", "does",
            "did", "has", "have", "had"});
  // Participles and verbs that introduce a location.
  AddWords(&t, Pos::kVerb,
           {"placed", "located", "positioned", "situated", "set", "sitting",
            "sits", "sit", "standing", "stands", "stand", "hanging", "hangs",
            "hung", "mounted", "lying", "lies", "lie", "laying", "leaning",
            "leans", "attached", "pushed", "tucked", "found", "seen", "kept",
            "stored", "put", "rests", "resting", "rest", "looks", "look",
            "find", "see", "stacked", "arranged", "lined", "centered",
            "installed", "built", "parked", "pulled", "sitted", "go",
            "goes", "walk", "enter", "entering", "contains", "holds",
            "holding", "surrounded", "covered", "topped", "made", "appears",
            "seems", "touching", "touches"});
  AddWords(&t, Pos::kPrep,
           {"of", "to", "with", "for", "from", "into", "onto", "at", "as",
            "than", "toward", "towards", "through", "up", "down", "off",
            "out", "about", "upon", "among", "via", "per", "like"});
  AddWords(&t, Pos::kOther,
           {"and", "or", "but", "while", "so", "if", "then", "when", "where",
            "directly", "just", "also", "very", "slightly", "immediately",
            "not", "never", "too", "exactly", "pretty", "fairly", "partly",
            "mostly", "only", "really", "quite", "somewhat", "almost",
            "right", "left", "more", "most", "less", "least", "other",
            "same", "first", "second", "third", "fourth", "last", "next",
            "closest", "nearest", "farthest", "furthest", "middle", "front",
            "back", "top", "bottom", "center", "centre", "far", "empty",
            "open", "closed", "single", "double", "main", "entire", "whole",
            "several", "many", "few", "different", "similar", "multiple",
            "upper", "lower", "inner", "outer", "rear", "northern",
            "southern", "eastern", "western", "north", "south", "east",
            "west", "please", "yes", "again", "together", "alone", "away",
            "still", "even", "once", "twice", "leftmost", "rightmost",
            "against", "facing", "near", "inside", "beside"});
  AddWords(&t, Pos::kNum,
           {"two", "three", "four", "five", "six", "seven", "eight", "nine",
            "ten", "eleven", "twelve", "dozen"});
  AddWords(&t, Pos::kNoun,
           {"cabinet", "bed", "chair", "sofa", "table", "door", "window",
            "bookshelf", "picture", "counter", "desk", "curtain",
            "refrigerator", "shower", "toilet", "sink", "bathtub", "garbage",
            "bin", "trash", "can", "armchair", "stool", "seat", "couch",
            "loveseat", "bench", "dresser", "nightstand", "wardrobe",
            "drawer", "closet", "bookcase", "shelf", "painting", "poster",
            "frame", "photo", "countertop", "fridge", "tub", "trashcan",
            "wastebasket", "doorway", "blinds", "drapes", "room", "wall",
            "floor", "ceiling", "corner", "side", "end", "edge", "lamp",
            "monitor", "computer", "keyboard", "pillow", "box", "printer",
            "tv", "television", "whiteboard", "board", "blackboard",
            "mirror", "towel", "ottoman", "bag", "backpack", "book", "plant",
            "clock", "fan", "heater", "radiator", "rack", "mat", "rug",
            "carpet", "blanket", "bottle", "cup", "mouse", "laptop", "piano",
            "stove", "oven", "microwave", "dishwasher", "washer", "dryer",
            "entrance", "hallway", "kitchen", "bathroom", "bedroom", "area",
            "space", "row", "pair", "group", "object", "item", "thing",
            "piece", "furniture", "suitcase", "basket", "container", "bucket",
            "vase", "speaker", "phone", "telephone", "light", "sign",
            "column", "pillar", "stairs", "staircase", "step", "railing",
            "rail", "ladder", "file", "cart", "coat", "jacket", "hat",
            "shoe", "shoes", "person", "kettle", "toaster", "machine",
            "cooler", "dispenser", "soap", "paper", "roll", "holder", "hook",
            "tray", "plate", "bowl", "mug", "glass", "jar", "pot", "pan",
            "tissue", "cushion", "headboard", "footboard", "mattress",
            "crib", "dresser", "vanity", "faucet", "showerhead", "handle",
            "knob", "outlet", "switch", "vent", "rod", "curtains", "shade",
            "lampshade", "sofa", "recliner", "futon", "hamper", "laundry",
            "closet", "cubby", "locker", "podium", "projector", "screen",
            "whiteboard", "chalkboard", "easel", "guitar", "drum", "ball",
            "toy", "doll", "stand", "tripod", "bar", "island", "pantry",
            "fireplace", "mantel", "banister", "partition", "divider",
            "cubicle", "office", "copier", "scanner", "fax", "router",
            "cable", "cord", "wire", "calendar", "map", "chart", "note",
            "notebook", "folder", "binder", "magazine", "newspaper",
            "envelope", "package", "cardboard", "crate", "tube", "pipe",
            "tank", "boiler", "furnace", "appliance", "counter", "workbench",
            "armrest", "backrest", "leg", "legs", "arm", "wheel", "wheels"});
  return t;
}

}  // namespace

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kAdj: return "ADJ";
    case Pos::kVerb: return "VERB";
    case Pos::kPrep: return "PREP";
    case Pos::kDet: return "DET";
    case Pos::kPron: return "PRON";
    case Pos::kNum: return "NUM";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

std::optional<Pos> ParsePos(std::string_view name) {
  for (Pos p : {Pos::kNoun, Pos::kAdj, Pos::kVerb, Pos::kPrep, Pos::kDet,
                Pos::kPron, Pos::kNum, Pos::kOther}) {
    if (PosName(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view AttributeGroupName(AttributeGroup group) {
  switch (group) {
    case AttributeGroup::kColor: return "color";
    case AttributeGroup::kShape: return "shape";
    case AttributeGroup::kSize: return "size";
  }
  return "color";
}

std::optional<AttributeGroup> ParseAttributeGroup(std::string_view name) {
  if (name == "color") return AttributeGroup::kColor;
  if (name == "shape") return AttributeGroup::kShape;
  if (name == "size") return AttributeGroup::kSize;
  return std::nullopt;
}

std::vector<ConfigSection> ParseSectionedConfig(std::string_view text,
                                                std::string_view separator) {
  std::vector<ConfigSection> sections;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      sections.push_back({Lower(Trim(trimmed.substr(1, trimmed.size() - 2))),
                          {}});
      continue;
    }
    if (sections.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": entry outside of any section");
    }
    std::string key = trimmed;
    std::string value;
    const size_t pos = trimmed.find(separator);
    if (pos != std::string::npos) {
      key = Trim(trimmed.substr(0, pos));
      value = Trim(trimmed.substr(pos + separator.size()));
      if (key.empty() || value.empty()) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": empty key or value");
      }
    }
    sections.back().entries.emplace_back(key, value);
  }
  return sections;
}

std::string ReadTextFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string EmbeddedFile(std::string_view name) {
  std::string_view contents = embedded::Lookup(name);
  if (contents.empty()) {
    throw ConfigError("no embedded data file named " + std::string(name));
  }
  return std::string(contents);
}

const std::unordered_map<std::string, Pos> &BasePosTable() {
  static const auto *table =
      new std::unordered_map<std::string, Pos>(BuildBaseTable());
  return *table;
}

ParserLexicons ParserLexicons::FromText(std::string_view text) {
  ParserLexicons lex;
  for (const ConfigSection &section : ParseSectionedConfig(text, "=")) {
    if (section.name == "relations") {
      for (const auto &[key, value] : section.entries) {
        RelationPhrase phrase;
        phrase.tokens = SplitWords(Lower(key));
        phrase.canonical = value.empty() ? Lower(key) : Lower(value);
        const bool duplicate = std::any_of(
            lex.relations_.begin(), lex.relations_.end(),
            [&](const RelationPhrase &p) { return p.tokens == phrase.tokens; });
        if (duplicate) {
          throw ConfigError("duplicate relation phrase: " + key);
        }
        if (std::find(lex.canonical_relations_.begin(),
                      lex.canonical_relations_.end(),
                      phrase.canonical) == lex.canonical_relations_.end()) {
          lex.canonical_relations_.push_back(phrase.canonical);
        }
        lex.relations_.push_back(std::move(phrase));
      }
    } else if (section.name.rfind("attributes.", 0) == 0) {
      auto group = ParseAttributeGroup(section.name.substr(11));
      if (!group) throw ConfigError("unknown attribute group: " + section.name);
      for (const auto &[key, value] : section.entries) {
        AttributeEntry entry{value.empty() ? Lower(key) : Lower(value), *group};
        lex.attributes_[Lower(key)] = entry;
      }
    } else if (section.name == "pronouns") {
      for (const auto &[key, value] : section.entries) {
        lex.pronouns_.insert(Lower(key));
      }
    } else if (section.name == "pos_overrides") {
      for (const auto &[key, value] : section.entries) {
        auto pos = ParsePos(value);
        if (!pos) throw ConfigError("unknown part of speech: " + value);
        lex.overrides_[Lower(key)] = *pos;
      }
    } else {
      throw ConfigError("unknown lexicon section: " + section.name);
    }
  }
  if (lex.relations_.empty()) {
    throw ConfigError("lexicon defines no relation phrases");
  }
  for (const RelationPhrase &phrase : lex.relations_) {
    lex.by_first_[phrase.tokens.front()].push_back(phrase);
  }
  for (auto &[first, phrases] : lex.by_first_) {
    std::stable_sort(phrases.begin(), phrases.end(),
                     [](const RelationPhrase &a, const RelationPhrase &b) {
                       return a.tokens.size() > b.tokens.size();
                     });
  }
  return lex;
}

ParserLexicons ParserLexicons::FromFile(const std::string &path) {
  return FromText(ReadTextFile(path));
}

ParserLexicons ParserLexicons::Default() {
  static const ParserLexicons *lex =
      new ParserLexicons(FromText(EmbeddedFile("lexicon.cfg")));
  return *lex;
}

const std::vector<RelationPhrase> &ParserLexicons::PhrasesStartingWith(
    std::string_view first) const {
  static const std::vector<RelationPhrase> kEmpty;
  auto it = by_first_.find(std::string(first));
  return it == by_first_.end() ? kEmpty : it->second;
}

const AttributeEntry *ParserLexicons::FindAttribute(
    std::string_view word) const {
  auto it = attributes_.find(std::string(word));
  return it == attributes_.end() ? nullptr : &it->second;
}

bool ParserLexicons::IsPronoun(std::string_view word) const {
  return pronouns_.count(std::string(word)) > 0;
}

std::optional<Pos> ParserLexicons::LookupPos(std::string_view word) const {
  const std::string key(word);
  if (auto it = overrides_.find(key); it != overrides_.end()) {
    return it->second;
  }
  if (attributes_.count(key) > 0) return Pos::kAdj;
  const auto &base = BasePosTable();
  if (auto it = base.find(key); it != base.end()) return it->second;
  return std::nullopt;
}

bool ParserLexicons::IsNoun(std::string_view word) const {
  const std::string key(word);
  if (auto it = overrides_.find(key); it != overrides_.end()) {
    return it->second == Pos::kNoun;
  }
  const auto &base = BasePosTable();
  auto it = base.find(key);
  return it != base.end() && it->second == Pos::kNoun;
}

}  // namespace langaux
