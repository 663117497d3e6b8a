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

#ifndef LANGAUX_CORPUS_H_
#define LANGAUX_CORPUS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "langaux/ontology.h"
#include "langaux/parser.h"

namespace langaux {

// One description record in the ScanRefer layout.
struct CorpusRecord {
  std::string scene_id;
  std::string object_id;
  std::string object_name;
  std::string description;
};

struct CorpusLoadResult {
  std::vector<CorpusRecord> records;
  // Array elements without the required string fields.
  long skipped = 0;
};

// Reads a JSON array of {scene_id, object_id, object_name, description}
// records. object_id may be a string or an integer. Malformed elements are
// counted and skipped; a document that is not a JSON array throws.
CorpusLoadResult LoadCorpus(const std::string &path);
CorpusLoadResult ParseCorpus(std::string_view json_text);

struct CorpusStats {
  long descriptions = 0;
  long with_triple = 0;
  long with_attribute = 0;
  long with_relation_phrase = 0;
  // Descriptions that contain a relation phrase and yielded a triple.
  long parsed_with_relation = 0;
  std::map<std::string, long> relation_freq;
  std::map<std::string, long> attribute_freq;

  void Add(const SceneGraph &graph);
  // Associative and commutative.
  void Merge(const CorpusStats &other);
  // parsed_with_relation / with_relation_phrase; nullopt when undefined.
  std::optional<double> SuccessRate() const;
  FrequencyTables Frequencies() const;

  bool operator==(const CorpusStats &) const = default;
};

CorpusStats ComputeCorpusStats(const std::vector<SceneGraph> &graphs);

}  // namespace langaux

#endif  // LANGAUX_CORPUS_H_
