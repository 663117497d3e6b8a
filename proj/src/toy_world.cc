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

#include "langaux/toy_world.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace langaux {
namespace {

constexpr const char *kToyClasses[] = {"chair",  "table",   "desk",      "bed",
                                       "sofa",   "cabinet", "door",      "window",
                                       "bookshelf", "sink"};

double Dist(const std::array<double, 3> &a, const std::array<double, 3> &b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// 0 = x, 1 = y, 2 = z. Earlier axes win ties.
int DominantAxis(const std::array<double, 3> &d) {
  int axis = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(d[k]) > std::abs(d[axis])) axis = k;
  }
  return axis;
}

std::array<double, 3> Offset(const ToyScene &s, int i, int j) {
  const auto &a = s.objects[i].position, &b = s.objects[j].position;
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// Surface phrase used when rendering each relation; all fold back to the
// canonical name through the lexicon.
const char *Surface(int relation, std::mt19937_64 *rng) {
  switch (relation) {
    case kLeftOf:
      return (*rng)() % 2 ? "to the left of" : "left of";
    case kRightOf:
      return (*rng)() % 2 ? "to the right of" : "right of";
    case kUnder:
      return (*rng)() % 2 ? "under" : "below";
    default:
      return nullptr;
  }
}

std::string Underscored(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

}  // namespace

const std::array<std::string, kNumToyRelations> &ToyRelationNames() {
  static const std::array<std::string, kNumToyRelations> names = {
      "next to", "left of",  "right of",   "above",     "under",
      "facing",  "in front of", "behind",  "near",      "far from",
      "on top of", "beside", "across from", "higher than", "lower than",
      "close to"};
  return names;
}

const std::vector<std::string> &ToyWorld::AttributeWords(AttributeGroup group) {
  static const std::vector<std::string> colors = {
      "white", "black", "brown", "gray",  "blue",  "red",    "green",
      "yellow", "beige", "tan",  "dark", "light", "wooden"};
  static const std::vector<std::string> shapes = {
      "rectangular", "square", "round", "circular", "l-shaped", "long", "flat"};
  static const std::vector<std::string> sizes = {"small", "large", "big",
                                                 "tall",  "short", "little"};
  switch (group) {
    case AttributeGroup::kColor:
      return colors;
    case AttributeGroup::kShape:
      return shapes;
    case AttributeGroup::kSize:
      return sizes;
  }
  return colors;
}

ToyWorld::ToyWorld(ToyWorldConfig config, const ClassList &classes)
    : config_(config), classes_(classes) {
  if (config_.min_objects < 2 || config_.max_objects < config_.min_objects) {
    throw std::invalid_argument("toy world needs 2 <= min_objects <= max_objects");
  }
  for (const char *name : kToyClasses) {
    auto id = classes_.IndexOf(name);
    if (!id) {
      throw std::invalid_argument(std::string("class list lacks toy class ") + name);
    }
    object_classes_.push_back(*id);
  }
  std::mt19937_64 rng(config_.appearance_seed);
  std::normal_distribution<double> normal;
  for (int g = 0; g < 3; ++g) {
    const auto &words = AttributeWords(static_cast<AttributeGroup>(g));
    for (size_t v = 0; v < words.size(); ++v) {
      std::vector<double> code(config_.code_dims);
      for (double &c : code) c = normal(rng);
      codes_[g].push_back(std::move(code));
    }
  }
}

ToyScene ToyWorld::Generate(uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  ToyScene scene;
  scene.seed = seed;
  const int n = uniform_int(config_.min_objects, config_.max_objects);
  const int groups = uniform_int(1, config_.max_groups);
  std::vector<std::array<double, 3>> centers(groups);
  for (auto &c : centers) {
    for (double &v : c) v = 0.15 + 0.7 * unit(rng);
  }
  while (static_cast<int>(scene.objects.size()) < n) {
    ToyObject o;
    const auto &c = centers[uniform_int(0, groups - 1)];
    for (int k = 0; k < 3; ++k) {
      o.position[k] = std::clamp(c[k] + config_.group_spread * normal(rng), 0.0, 1.0);
    }
    bool too_close = false;
    for (const ToyObject &other : scene.objects) {
      if (Dist(o.position, other.position) < config_.min_separation) too_close = true;
    }
    if (too_close) continue;
    o.class_id = object_classes_[uniform_int(0, static_cast<int>(object_classes_.size()) - 1)];
    o.color = uniform_int(0, static_cast<int>(codes_[0].size()) - 1);
    o.shape = uniform_int(0, static_cast<int>(codes_[1].size()) - 1);
    o.size = uniform_int(0, static_cast<int>(codes_[2].size()) - 1);
    o.noise.resize(config_.noise_dims);
    for (double &v : o.noise) v = normal(rng);
    scene.objects.push_back(std::move(o));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || !Adjacent(scene, i, j)) continue;
      if (unit(rng) < config_.facing_fraction) scene.facing.emplace_back(i, j);
    }
  }
  return scene;
}

bool ToyWorld::Adjacent(const ToyScene &s, int i, int j) const {
  return Dist(s.objects[i].position, s.objects[j].position) < config_.next_to;
}

ToyDirection ToyWorld::Direction(const ToyScene &s, int i, int j) const {
  const auto d = Offset(s, i, j);
  switch (DominantAxis(d)) {
    case 0:
      return d[0] < 0 ? kDirLeft : kDirRight;
    case 1:
      return d[1] < 0 ? kDirFront : kDirBehind;
    default:
      return d[2] > 0 ? kDirAbove : kDirBelow;
  }
}

uint32_t ToyWorld::Relations(const ToyScene &s, int i, int j) const {
  if (i == j) return 0;
  const auto d = Offset(s, i, j);
  const double dist = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double horiz = std::sqrt(d[0] * d[0] + d[1] * d[1]);
  const bool adj = dist < config_.next_to;
  const int axis = DominantAxis(d);
  uint32_t r = 0;
  auto set = [&r](int rel, bool on) {
    if (on) r |= 1u << rel;
  };
  set(kNextTo, adj);
  set(kLeftOf, adj && axis == 0 && d[0] < 0);
  set(kRightOf, adj && axis == 0 && d[0] > 0);
  set(kAbove, adj && axis == 2 && d[2] > 0);
  set(kUnder, adj && axis == 2 && d[2] < 0);
  set(kFacing, std::find(s.facing.begin(), s.facing.end(),
                         std::make_pair(i, j)) != s.facing.end());
  set(kInFrontOf, adj && axis == 1 && d[1] < 0);
  set(kBehind, adj && axis == 1 && d[1] > 0);
  set(kNear, dist < config_.near);
  set(kFarFrom, dist > config_.far);
  set(kOnTopOf, (r >> kAbove & 1u) && horiz < config_.on_top_horizontal);
  set(kBeside, adj && axis != 2);
  set(kAcrossFrom, !adj && dist < config_.far && axis == 1);
  set(kHigherThan, d[2] > config_.height_margin);
  set(kLowerThan, d[2] < -config_.height_margin);
  set(kCloseTo, dist < config_.close);
  return r;
}

ToyDescription ToyWorld::Render(const ToyScene &scene, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(scene.objects.size());
  const int subject = std::uniform_int_distribution<int>(0, n - 1)(rng);
  return Render(scene, subject, rng());
}

ToyDescription ToyWorld::Render(const ToyScene &scene, int subject,
                                uint64_t seed) const {
  const int n = static_cast<int>(scene.objects.size());
  if (subject < 0 || subject >= n) {
    throw std::invalid_argument("render subject out of range");
  }
  // Anchors are nearby objects when there are any.
  std::vector<int> partners;
  for (int j = 0; j < n; ++j) {
    if (j != subject && Adjacent(scene, subject, j)) partners.push_back(j);
  }
  if (partners.empty()) {
    for (int j = 0; j < n; ++j) {
      if (j != subject && Relations(scene, subject, j) != 0) partners.push_back(j);
    }
  }
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };

  ToyDescription d;
  d.subject = subject;
  if (partners.empty()) {
    // Nothing relates to the subject; describe it alone.
    d.object = -1;
    d.relation = -1;
    const ToyObject &o = scene.objects[d.subject];
    const std::string attr = AttributeWords(AttributeGroup::kColor)[o.color];
    const std::string name = classes_.name(o.class_id);
    d.text = "there is a " + attr + " " + name + ".";
    d.template_id = -1;
    d.attributes.emplace_back(d.subject, attr);
    d.referent = Underscored(name);
    return d;
  }
  d.object = partners[pick(static_cast<int>(partners.size()))];
  const uint32_t rels = Relations(scene, d.subject, d.object);
  std::vector<int> true_rels;
  std::vector<double> weights;
  for (int k = 0; k < kNumToyRelations; ++k) {
    if (rels >> k & 1u) {
      true_rels.push_back(k);
      weights.push_back(std::pow(config_.relation_decay, k));
    }
  }
  d.relation = true_rels[std::discrete_distribution<int>(weights.begin(),
                                                         weights.end())(rng)];
  const char *surface = Surface(d.relation, &rng);
  const std::string rel = surface != nullptr ? surface : ToyRelationNames()[d.relation];

  auto attribute_of = [&](int obj) {
    const ToyObject &o = scene.objects[obj];
    switch (pick(3)) {
      case 0:
        return AttributeWords(AttributeGroup::kColor)[o.color];
      case 1:
        return AttributeWords(AttributeGroup::kShape)[o.shape];
      default:
        return AttributeWords(AttributeGroup::kSize)[o.size];
    }
  };
  const std::string subj = classes_.name(scene.objects[d.subject].class_id);
  const std::string obj = classes_.name(scene.objects[d.object].class_id);
  const std::string attr = attribute_of(d.subject);
  d.attributes.emplace_back(d.subject, attr);
  d.template_id = pick(4);
  switch (d.template_id) {
    case 0:
      d.text = "the " + attr + " " + subj + " is " + rel + " the " + obj + ".";
      break;
    case 1:
      d.text = "there is a " + attr + " " + subj + " placed " + rel + " the " +
               obj + ".";
      break;
    case 2:
      d.text = "this is a " + attr + " " + subj + ". it is " + rel + " the " +
               obj + ".";
      break;
    default: {
      const std::string attr2 = attribute_of(d.object);
      d.attributes.emplace_back(d.object, attr2);
      d.text = "the " + attr + " " + subj + " is " + rel + " the " + attr2 +
               " " + obj + ".";
    }
  }
  d.referent = Underscored(subj);
  return d;
}

int ToyWorld::InputWidth() const {
  return classes_.size() + 3 + 3 * config_.code_dims + config_.noise_dims;
}

std::vector<double> ToyWorld::EncoderInput(const ToyObject &o) const {
  std::vector<double> x(InputWidth(), 0.0);
  x[o.class_id] = 1.0;
  int k = classes_.size();
  for (double p : o.position) x[k++] = config_.position_scale * (2.0 * p - 1.0);
  for (int g = 0; g < 3; ++g) {
    const int value = g == 0 ? o.color : g == 1 ? o.shape : o.size;
    for (double c : codes_[g][value]) x[k++] = c;
  }
  for (double v : o.noise) x[k++] = config_.noise_scale * v;
  return x;
}

DependencyMatrix ToyDependencyMatrix() {
  static const DependencyMatrix m = [] {
    const std::vector<std::string> order(ToyRelationNames().begin(),
                                         ToyRelationNames().end());
    return DependencyMatrix::FromText(EmbeddedFile("toy_relations.txt"), &order);
  }();
  return m;
}

Vocabulary ToyVocabulary(int k) {
  if (k < 1 || k > kNumToyRelations) {
    throw std::invalid_argument("toy vocabulary size must be in [1, 16]");
  }
  const Vocabulary base = Vocabulary::Default();
  std::vector<std::pair<std::string, AttributeGroup>> attributes;
  for (const std::string &a : base.attributes()) {
    if (auto g = base.GroupOf(a)) attributes.emplace_back(a, *g);
  }
  return Vocabulary(std::vector<std::string>(ToyRelationNames().begin(),
                                             ToyRelationNames().begin() + k),
                    std::move(attributes));
}

}  // namespace langaux
