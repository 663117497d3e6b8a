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

#include "langaux/corpus.h"

#include <set>

#include "json.hpp"

namespace langaux {

using nlohmann::json;

CorpusLoadResult ParseCorpus(std::string_view json_text) {
  json doc = json::parse(json_text);
  if (!doc.is_array()) {
    throw std::runtime_error("corpus must be a JSON array of records");
  }
  CorpusLoadResult result;
  result.records.reserve(doc.size());
  for (const json &item : doc) {
    if (!item.is_object()) {
      ++result.skipped;
      continue;
    }
    auto str = [&](const char *key) -> const json * {
      auto it = item.find(key);
      return it != item.end() && it->is_string() ? &*it : nullptr;
    };
    const json *scene = str("scene_id");
    const json *name = str("object_name");
    const json *text = str("description");
    auto oid = item.find("object_id");
    const bool oid_ok = oid != item.end() &&
                        (oid->is_string() || oid->is_number_integer());
    if (scene == nullptr || name == nullptr || text == nullptr || !oid_ok) {
      ++result.skipped;
      continue;
    }
    CorpusRecord rec;
    rec.scene_id = scene->get<std::string>();
    rec.object_id = oid->is_string() ? oid->get<std::string>()
                                     : std::to_string(oid->get<long long>());
    rec.object_name = name->get<std::string>();
    rec.description = text->get<std::string>();
    result.records.push_back(std::move(rec));
  }
  return result;
}

CorpusLoadResult LoadCorpus(const std::string &path) {
  return ParseCorpus(ReadTextFile(path));
}

void CorpusStats::Add(const SceneGraph &graph) {
  ++descriptions;
  if (!graph.triples.empty()) ++with_triple;
  if (graph.HasAttributes()) ++with_attribute;
  if (graph.relation_phrase_count > 0) {
    ++with_relation_phrase;
    if (!graph.triples.empty()) ++parsed_with_relation;
  }
  for (const RelationTriple &t : graph.triples) ++relation_freq[t.relation];
  for (const EntityMention &e : graph.entities) {
    for (const std::string &a : e.attributes) ++attribute_freq[a];
  }
}

void CorpusStats::Merge(const CorpusStats &other) {
  descriptions += other.descriptions;
  with_triple += other.with_triple;
  with_attribute += other.with_attribute;
  with_relation_phrase += other.with_relation_phrase;
  parsed_with_relation += other.parsed_with_relation;
  for (const auto &[k, v] : other.relation_freq) relation_freq[k] += v;
  for (const auto &[k, v] : other.attribute_freq) attribute_freq[k] += v;
}

std::optional<double> CorpusStats::SuccessRate() const {
  if (with_relation_phrase == 0) return std::nullopt;
  return static_cast<double>(parsed_with_relation) /
         static_cast<double>(with_relation_phrase);
}

FrequencyTables CorpusStats::Frequencies() const {
  return {relation_freq, attribute_freq};
}

CorpusStats ComputeCorpusStats(const std::vector<SceneGraph> &graphs) {
  CorpusStats stats;
  for (const SceneGraph &g : graphs) stats.Add(g);
  return stats;
}

}  // namespace langaux
