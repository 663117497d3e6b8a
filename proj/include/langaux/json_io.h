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

#ifndef LANGAUX_JSON_IO_H_
#define LANGAUX_JSON_IO_H_

#include <json.hpp>

#include "langaux/aux_losses.h"
#include "langaux/corpus.h"
#include "langaux/gradcheck_suite.h"
#include "langaux/labels.h"
#include "langaux/ontology.h"
#include "langaux/parser.h"
#include "langaux/toy_train.h"

// JSON forms of the toolkit's records. Doubles are written in shortest
// round-trip form, so values survive serialization bit for bit.

namespace langaux {

using Json = nlohmann::ordered_json;

Json ToJson(const SceneGraph &graph);
// Throws std::invalid_argument on a structurally invalid document.
SceneGraph SceneGraphFromJson(const Json &j);

Json ToJson(const AuxTargets &targets);
AuxTargets AuxTargetsFromJson(const Json &j);

Json ToJson(const CorpusStats &stats);
Json ToJson(const Vocabulary &vocab);
Json ToJson(const AuxLossReport &report);
Json ToJson(const ProbeMetrics &metrics);
Json ToJson(const ToyTrainConfig &config);
Json ToJson(const TrainingReport &report);
Json ToJson(const AblationRow &row);
Json ToJson(const GradCheckCase &result);

}  // namespace langaux

#endif  // LANGAUX_JSON_IO_H_
