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

#ifndef LANGAUX_TOY_WORLD_H_
#define LANGAUX_TOY_WORLD_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "langaux/lexicon.h"
#include "langaux/ontology.h"

namespace langaux {

// Relations the toy world derives from geometry, in vocabulary order.
enum ToyRelation {
  kNextTo,
  kLeftOf,
  kRightOf,
  kAbove,
  kUnder,
  kFacing,
  kInFrontOf,
  kBehind,
  kNear,
  kFarFrom,
  kOnTopOf,
  kBeside,
  kAcrossFrom,
  kHigherThan,
  kLowerThan,
  kCloseTo,
  kNumToyRelations,
};

const std::array<std::string, kNumToyRelations> &ToyRelationNames();

// Direction classes used by the relation probe: the dominant axis of the
// offset between two adjacent objects and its sign.
enum ToyDirection {
  kDirLeft,
  kDirRight,
  kDirFront,
  kDirBehind,
  kDirAbove,
  kDirBelow,
  kNumToyDirections,
};

struct ToyWorldConfig {
  double next_to = 0.25;  // adjacency threshold tau
  double near = 0.4;
  double far = 0.7;
  double close = 0.15;
  double on_top_horizontal = 0.1;
  double height_margin = 0.1;
  double min_separation = 0.05;
  double facing_fraction = 0.2;
  // Rendering prefers frequent relations: relation k of a pair is stated
  // with weight relation_decay^k.
  double relation_decay = 0.8;
  int min_objects = 3;
  int max_objects = 10;
  // Spread of objects around their group centre.
  double group_spread = 0.1;
  int max_groups = 3;
  // Width and scale of the per-object nuisance channel fed to the encoder.
  int noise_dims = 32;
  double noise_scale = 1.0;
  // Encoder inputs carry position as position_scale * (2p - 1).
  double position_scale = 1.0;
  // Width of each attribute appearance code.
  int code_dims = 4;
  uint64_t appearance_seed = 0x6c61787765ULL;
};

struct ToyObject {
  int class_id = 0;  // index into the class list
  std::array<double, 3> position{};
  int color = 0;  // index into ToyWorld::AttributeWords(kColor)
  int shape = 0;
  int size = 0;
  std::vector<double> noise;

  bool operator==(const ToyObject &) const = default;
};

struct ToyScene {
  uint64_t seed = 0;
  std::vector<ToyObject> objects;
  // Ordered adjacent pairs that are facing.
  std::vector<std::pair<int, int>> facing;

  bool operator==(const ToyScene &) const = default;
};

struct ToyDescription {
  std::string text;
  std::string referent;
  int subject = 0;
  // Object and relation are -1 when no pair of objects is related.
  int object = 0;
  int relation = 0;  // ToyRelation
  int template_id = 0;
  // (object index, attribute word) pairs mentioned by the text.
  std::vector<std::pair<int, std::string>> attributes;
};

class ToyWorld {
 public:
  explicit ToyWorld(ToyWorldConfig config = {},
                    const ClassList &classes = ClassList::Default());

  const ToyWorldConfig &config() const { return config_; }
  const ClassList &classes() const { return classes_; }
  // Class ids that appear in toy scenes.
  const std::vector<int> &object_classes() const { return object_classes_; }
  static const std::vector<std::string> &AttributeWords(AttributeGroup group);

  ToyScene Generate(uint64_t seed) const;

  // Bitmask over ToyRelation of relations (i, j) holds in.
  uint32_t Relations(const ToyScene &scene, int i, int j) const;
  bool Adjacent(const ToyScene &scene, int i, int j) const;
  // Direction class of an ordered pair.
  ToyDirection Direction(const ToyScene &scene, int i, int j) const;

  // Describes a random object.
  ToyDescription Render(const ToyScene &scene, uint64_t seed) const;
  // Describes `subject` through a random related partner, or alone when no
  // object relates to it.
  ToyDescription Render(const ToyScene &scene, int subject, uint64_t seed) const;

  // Encoder input: class one-hot, position, appearance codes, noise.
  int InputWidth() const;
  std::vector<double> EncoderInput(const ToyObject &object) const;

 private:
  ToyWorldConfig config_;
  ClassList classes_;
  std::vector<int> object_classes_;
  // codes_[group][value] is a code_dims vector.
  std::array<std::vector<std::vector<double>>, 3> codes_;
};

// Dependency matrix of the toy relation set as shipped with the library.
DependencyMatrix ToyDependencyMatrix();
// Vocabulary with the first k toy relations and the default attributes.
Vocabulary ToyVocabulary(int k);

}  // namespace langaux

#endif  // LANGAUX_TOY_WORLD_H_
