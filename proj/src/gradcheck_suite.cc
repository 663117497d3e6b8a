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

#include "langaux/gradcheck_suite.h"

#include <functional>
#include <random>

#include "langaux/aux_losses.h"
#include "langaux/grad_check.h"
#include "langaux/model.h"
#include "langaux/tape.h"

namespace langaux {
namespace {

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  Tensor Normal(std::vector<int> shape, double scale = 1.0) {
    Tensor t(std::move(shape));
    std::normal_distribution<double> n(0.0, scale);
    for (double &v : t.values()) v = n(gen_);
    return t;
  }
  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  double Unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

 private:
  std::mt19937_64 gen_;
};

std::vector<double> RandomTargets(Rng &rng, int k) {
  std::vector<double> y(k);
  const double values[] = {0.0, 0.5, 1.0};
  for (double &v : y) v = values[rng.Int(0, 2)];
  y[rng.Int(0, k - 1)] = 1.0;
  return y;
}

// Inputs and graph of one check instance.
struct Instance {
  std::vector<Tensor> inputs;
  TapeFn build;
};

using CaseFn = std::function<Instance(Rng &)>;

Instance LinearCase(Rng &rng) {
  Tensor r = rng.Normal({3, 5});
  return {{rng.Normal({3, 4}), rng.Normal({5, 4}), rng.Normal({5})},
          [r](Tape &t, std::span<const Var> v) {
            return t.WeightedSum(t.Linear(v[0], v[1], v[2]), r);
          }};
}

Instance CrossEntropyCase(Rng &rng) {
  const int target = rng.Int(0, 6);
  return {{rng.Normal({7}, 2.0)}, [target](Tape &t, std::span<const Var> v) {
            return t.SoftmaxCrossEntropy(v[0], target);
          }};
}

CaseFn BceCase(UndeterminedMode mode) {
  return [mode](Rng &rng) -> Instance {
    std::vector<double> y = RandomTargets(rng, 8);
    return {{rng.Normal({8}, 2.0)}, [y, mode](Tape &t, std::span<const Var> v) {
              return t.MaskedBce(v[0], y, mode);
            }};
  };
}

Instance AttentionCase(Rng &rng) {
  Tensor r = rng.Normal({3, 4});
  return {{rng.Normal({3, 4}), rng.Normal({3, 4}), rng.Normal({3, 4})},
          [r](Tape &t, std::span<const Var> v) {
            return t.WeightedSum(t.Attention(v[0], v[1], v[2]), r);
          }};
}

Instance LayerNormCase(Rng &rng) {
  Tensor r = rng.Normal({3, 6});
  return {{rng.Normal({3, 6}), rng.Normal({6}), rng.Normal({6})},
          [r](Tape &t, std::span<const Var> v) {
            return t.WeightedSum(t.LayerNorm(v[0], v[1], v[2]), r);
          }};
}

Instance TanhCase(Rng &rng) {
  Tensor r = rng.Normal({2, 5});
  return {{rng.Normal({2, 5})}, [r](Tape &t, std::span<const Var> v) {
            return t.WeightedSum(t.Tanh(v[0]), r);
          }};
}

Instance GruCase(Rng &rng) {
  const int steps = 5, input = 4, hidden = 5;
  Instance inst;
  inst.inputs.push_back(rng.Normal({steps, input}));
  GruParams shapes = GruParams::Create(input, hidden);
  for (const Tensor *p : shapes.Tensors()) {
    inst.inputs.push_back(rng.Normal(p->shape(), 0.5));
  }
  Tensor r = rng.Normal({steps, hidden});
  inst.build = [r](Tape &t, std::span<const Var> v) {
    std::array<Var, GruParams::kNumTensors> params;
    for (int i = 0; i < GruParams::kNumTensors; ++i) params[i] = v[i + 1];
    return t.WeightedSum(t.Gru(v[0], params), r);
  };
  return inst;
}

CaseFn EndToEndCase(FusionMode fusion) {
  return [fusion](Rng &rng) -> Instance {
    ModelDims dims;
    dims.vocab_size = 7;
    dims.embed = 4;
    dims.lang = 5;
    dims.visual = 4;
    dims.fused = 5;
    dims.num_classes = 4;
    dims.num_relations = 6;
    dims.num_attributes = 5;
    dims.fusion = fusion;
    const int clusters = 6;
    AuxModel model = AuxModel::Create(dims, static_cast<uint64_t>(rng.Int(0, 1 << 30)));

    Instance inst;
    for (const auto &[name, t] : model.Named()) {
      Tensor noisy = *t;
      // Nonzero biases and gains exercise every gradient path.
      Tensor jitter = rng.Normal(t->shape(), 0.3);
      for (int64_t i = 0; i < noisy.size(); ++i) noisy[i] += jitter[i];
      inst.inputs.push_back(std::move(noisy));
    }
    inst.inputs.push_back(rng.Normal({clusters, dims.visual}));

    Tensor scores = rng.Normal({clusters, dims.num_classes});
    std::vector<uint8_t> objectness(clusters);
    for (uint8_t &m : objectness) m = rng.Unit() < 0.8 ? 1 : 0;
    objectness[0] = objectness[1] = 1;
    ClusterSet probe_set{Tensor({clusters, 3}), Tensor({clusters, dims.visual}),
                         scores, objectness};
    std::vector<int> predicted;
    for (int i = 0; i < clusters; ++i) predicted.push_back(probe_set.PredictedClass(i));

    AuxTargets targets;
    targets.text_class = rng.Int(0, dims.num_classes - 1);
    const int relation_items = rng.Int(1, 3);
    for (int k = 0; k < relation_items; ++k) {
      RelationItem item;
      item.subject_class = predicted[rng.Int(0, clusters - 1)];
      item.object_class = predicted[rng.Int(0, clusters - 1)];
      item.relation = 0;
      item.targets = RandomTargets(rng, dims.num_relations);
      targets.relation_items.push_back(item);
    }
    const int attribute_items = rng.Int(1, 3);
    for (int k = 0; k < attribute_items; ++k) {
      targets.attribute_items.push_back(
          {predicted[rng.Int(0, clusters - 1)], rng.Int(0, dims.num_attributes - 1)});
    }
    std::vector<int> ids;
    for (int k = 0; k < 5; ++k) ids.push_back(rng.Int(0, dims.vocab_size - 1));
    Tensor r = rng.Normal({clusters, dims.visual});

    inst.build = [=](Tape &t, std::span<const Var> v) {
      AuxModelVars vars;
      vars.fusion = fusion;
      size_t k = 0;
      vars.embedding = v[k++];
      for (Var &g : vars.gru) g = v[k++];
      if (fusion == FusionMode::kConcat) {
        vars.fuse_w = v[k++];
        vars.fuse_b = v[k++];
      } else {
        vars.query_w = v[k++];
        vars.query_b = v[k++];
        vars.norm_gain = v[k++];
        vars.norm_bias = v[k++];
      }
      vars.text_w = v[k++];
      vars.text_b = v[k++];
      vars.relation_w = v[k++];
      vars.relation_b = v[k++];
      vars.attribute_w = v[k++];
      vars.attribute_b = v[k++];
      Var features = v[k++];
      const LanguageEncoding lang = EncodeLanguage(t, vars, ids);
      Var fused = Fuse(t, vars, lang, features);
      const AuxLossVars aux = BuildAuxLosses(t, vars, lang.f_lang, fused, scores,
                                             objectness, targets, {}, nullptr);
      Var perception = t.WeightedSum(t.Tanh(features), r);
      return OverallLoss(t, perception, aux, LossWeights{});
    };
    return inst;
  };
}

}  // namespace

std::vector<GradCheckCase> RunGradCheckSuite(int num_seeds) {
  struct Spec {
    const char *name;
    double tolerance;
    CaseFn make;
  };
  const std::vector<Spec> specs = {
      {"linear", 1e-8, LinearCase},
      {"softmax_cross_entropy", 1e-4, CrossEntropyCase},
      {"masked_bce", 1e-4, BceCase(UndeterminedMode::kMask)},
      {"masked_bce_literal", 1e-4, BceCase(UndeterminedMode::kLiteral)},
      {"scaled_dot_attention", 1e-4, AttentionCase},
      {"layer_norm", 1e-4, LayerNormCase},
      {"tanh", 1e-4, TanhCase},
      {"gru", 1e-4, GruCase},
      {"end_to_end_concat", 1e-3, EndToEndCase(FusionMode::kConcat)},
      {"end_to_end_cross_attention", 1e-3,
       EndToEndCase(FusionMode::kCrossAttention)},
  };
  std::vector<GradCheckCase> out;
  for (size_t c = 0; c < specs.size(); ++c) {
    GradCheckCase result;
    result.name = specs[c].name;
    result.tolerance = specs[c].tolerance;
    result.seeds = num_seeds;
    for (int seed = 0; seed < num_seeds; ++seed) {
      Rng rng(static_cast<uint64_t>(seed) * 1000003u + c);
      Instance inst = specs[c].make(rng);
      const GradCheckResult r = TapeGradCheck(inst.build, std::move(inst.inputs));
      if (r.max_rel_error > result.worst || seed == 0) {
        result.worst = r.max_rel_error;
        result.worst_seed = seed;
      }
    }
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace langaux
