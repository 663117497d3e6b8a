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

#ifndef LANGAUX_TOY_TRAIN_H_
#define LANGAUX_TOY_TRAIN_H_

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "langaux/aux_losses.h"
#include "langaux/model.h"
#include "langaux/tape.h"
#include "langaux/toy_world.h"

namespace langaux {

enum class ToyMode { kBaseline, kAssisted };

const char *ToyModeName(ToyMode mode);

struct ToyTrainConfig {
  ToyMode mode = ToyMode::kAssisted;
  LossWeights weights;
  int steps = 2000;
  double learning_rate = 0.05;
  int scenes_per_step = 1;
  // Descriptions rendered per training scene, cycling over the objects in a
  // shuffled order. Auxiliary terms are summed over them.
  int descriptions_per_scene = 16;
  uint64_t seed = 0;
  // K_r: the first num_relations toy relations form the vocabulary.
  int num_relations = 8;
  FusionMode fusion = FusionMode::kConcat;
  AuxLossOptions loss_options;
  int hidden = 32;
  int visual = 32;
  int embed = 16;
  int lang = 32;
  int fused = 32;
  int probe_train_scenes = 300;
  int probe_test_scenes = 300;
  ToyWorldConfig world;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int step, const std::string &what)
      : std::runtime_error("training diverged at step " + std::to_string(step) +
                           ": " + what),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

struct ProbeMetrics {
  double relation = 0.0;
  // Mean of the colour, shape and size probes.
  double attribute = 0.0;
  std::array<double, 3> attribute_by_group{};
  double class_accuracy = 0.0;
  int relation_train_pairs = 0;
  int relation_test_pairs = 0;

  bool operator==(const ProbeMetrics &) const = default;
};

struct TrainingReport {
  ToyTrainConfig config;
  // Batch-mean losses per step.
  std::vector<double> loss;
  std::vector<double> perception;
  std::vector<double> text;
  std::vector<double> relation;
  std::vector<double> attribute;
  int relation_items = 0;
  int relation_skipped = 0;
  int attribute_items = 0;
  int attribute_skipped = 0;
  int parse_failures = 0;
  ProbeMetrics probe;
};

// Per-object feature extractor: two tanh layers followed by a class head and
// an objectness head.
struct ToyEncoder {
  Tensor w1, b1, w2, b2;
  Tensor class_w, class_b;
  Tensor object_w, object_b;

  static ToyEncoder Create(int input, int hidden, int visual, int num_classes,
                           uint64_t seed);
  std::vector<Tensor *> Parameters();
  // Features [n x visual] for stacked encoder inputs, without a tape.
  Tensor Features(const Tensor &inputs) const;
};

struct ToyEncoderVars {
  Var features;      // [n x c_v]
  Var class_logits;  // [n x N_c]
  Var object_logit;  // [n x 1]
};

ToyEncoderVars EncodeObjects(Tape &tape, ToyEncoder &encoder,
                             const Tensor &inputs);

// Stacked encoder inputs of a scene.
Tensor SceneInputs(const ToyWorld &world, const ToyScene &scene);

// Mixes a base seed with stream indices.
uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b = 0);

// Deterministic training run. Throws DivergenceError on a non-finite loss.
TrainingReport TrainToy(const ToyTrainConfig &config);

// Probe accuracies of frozen encoder features on held-out scenes.
ProbeMetrics EvaluateProbes(const ToyWorld &world, const ToyEncoder &encoder,
                            const ToyTrainConfig &config);

// Same probes on caller-provided per-object features (for calibration of the
// probe itself). features(scene, object) must return a fixed-width vector.
using ObjectFeatureFn =
    std::function<std::vector<double>(const ToyScene &, int)>;
ProbeMetrics EvaluateProbes(const ToyWorld &world, const ObjectFeatureFn &features,
                            const ToyTrainConfig &config);

struct AblationVariant {
  std::string name;
  ToyMode mode = ToyMode::kAssisted;
  LossWeights weights;
  int num_relations = 8;
};

struct AblationRow {
  AblationVariant variant;
  std::vector<ProbeMetrics> per_seed;
  ProbeMetrics mean;
  ProbeMetrics stddev;
};

// Baseline, +relation, +attribute, +relation+attribute at the base K_r.
std::vector<AblationVariant> TaskAblationVariants(const ToyTrainConfig &base);
// +relation+attribute at each K_r.
std::vector<AblationVariant> VocabularyAblationVariants(
    const ToyTrainConfig &base, const std::vector<int> &sizes);

// Trains every variant for every seed (seed list = base.seed + k) and
// aggregates the probe metrics. Runs use up to `threads` workers.
std::vector<AblationRow> RunAblation(const ToyTrainConfig &base,
                                     const std::vector<AblationVariant> &variants,
                                     int num_seeds, int threads = 1);

}  // namespace langaux

#endif  // LANGAUX_TOY_TRAIN_H_
