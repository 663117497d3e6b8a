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

#include "langaux/toy_train.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include "langaux/labels.h"
#include "langaux/parser.h"
#include "langaux/probe.h"
#include "langaux/text.h"

namespace langaux {
namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed streams.
enum Stream : uint64_t {
  kEncoderInit = 1,
  kModelInit = 2,
  kTrainScene = 3,
  kTrainText = 4,
  kProbeTrain = 5,
  kProbeTest = 6,
};

Tensor Uniform(int out, int in, std::mt19937_64 *rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  std::uniform_real_distribution<double> u(-bound, bound);
  Tensor w({out, in});
  for (double &v : w.values()) v = u(*rng);
  return w;
}

Tensor TanhOf(Tensor t) {
  for (double &v : t.values()) v = std::tanh(v);
  return t;
}

// Every word the toy templates can produce.
WordIndex ToyWordIndex(const ToyWorld &world) {
  WordIndex index;
  std::vector<std::string> phrases = {
      "the is there a placed this it .", "to the left of", "to the right of",
      "below"};
  for (int c : world.object_classes()) phrases.push_back(world.classes().name(c));
  for (const std::string &r : ToyRelationNames()) phrases.push_back(r);
  for (int g = 0; g < 3; ++g) {
    for (const std::string &w : ToyWorld::AttributeWords(static_cast<AttributeGroup>(g))) {
      phrases.push_back(w);
    }
  }
  for (const std::string &p : phrases) {
    for (const std::string &t : NormalizeAndTokenize(p).tokens) index.Add(t);
  }
  return index;
}

void Step(std::vector<Tensor *> params, double lr) {
  for (Tensor *p : params) {
    if (!p->has_grad()) continue;
    std::vector<double> &g = p->grad();
    for (int64_t i = 0; i < p->size(); ++i) (*p)[i] -= lr * g[i];
    p->ZeroGrad();
  }
}

using SceneFeatureFn = std::function<Tensor(const ToyScene &)>;

struct ProbeData {
  std::vector<std::vector<double>> relation_x;
  std::vector<int> relation_y;
  std::vector<std::vector<double>> object_x;
  std::array<std::vector<int>, 3> attribute_y;
  std::vector<int> class_y;
};

ProbeData CollectProbeData(const ToyWorld &world, const SceneFeatureFn &features,
                           uint64_t seed, Stream stream, int scenes) {
  ProbeData d;
  for (int k = 0; k < scenes; ++k) {
    const ToyScene scene = world.Generate(MixSeed(seed, stream, k));
    const Tensor f = features(scene);
    const int n = static_cast<int>(scene.objects.size());
    for (int i = 0; i < n; ++i) {
      const auto row = f.row(i);
      d.object_x.emplace_back(row.begin(), row.end());
      const ToyObject &o = scene.objects[i];
      d.attribute_y[0].push_back(o.color);
      d.attribute_y[1].push_back(o.shape);
      d.attribute_y[2].push_back(o.size);
      d.class_y.push_back(o.class_id);
      for (int j = 0; j < n; ++j) {
        if (i == j || !world.Adjacent(scene, i, j)) continue;
        std::vector<double> x(row.begin(), row.end());
        const auto other = f.row(j);
        x.insert(x.end(), other.begin(), other.end());
        d.relation_x.push_back(std::move(x));
        d.relation_y.push_back(world.Direction(scene, i, j));
      }
    }
  }
  return d;
}

Eigen::MatrixXd ToMatrix(const std::vector<std::vector<double>> &rows) {
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ProbeMetrics EvaluateWith(const ToyWorld &world, const SceneFeatureFn &features,
                          const ToyTrainConfig &config) {
  const ProbeData train = CollectProbeData(world, features, config.seed,
                                           kProbeTrain, config.probe_train_scenes);
  const ProbeData test = CollectProbeData(world, features, config.seed,
                                          kProbeTest, config.probe_test_scenes);
  ProbeMetrics m;
  m.relation_train_pairs = static_cast<int>(train.relation_y.size());
  m.relation_test_pairs = static_cast<int>(test.relation_y.size());
  m.relation = ProbeAccuracy(ToMatrix(train.relation_x), train.relation_y,
                             ToMatrix(test.relation_x), test.relation_y,
                             kNumToyDirections);
  const Eigen::MatrixXd train_objects = ToMatrix(train.object_x);
  const Eigen::MatrixXd test_objects = ToMatrix(test.object_x);
  double sum = 0.0;
  for (int g = 0; g < 3; ++g) {
    const int k = static_cast<int>(
        ToyWorld::AttributeWords(static_cast<AttributeGroup>(g)).size());
    m.attribute_by_group[g] =
        ProbeAccuracy(train_objects, train.attribute_y[g], test_objects,
                      test.attribute_y[g], k);
    sum += m.attribute_by_group[g];
  }
  m.attribute = sum / 3.0;
  m.class_accuracy = ProbeAccuracy(train_objects, train.class_y, test_objects,
                                   test.class_y, world.classes().size());
  return m;
}

ProbeMetrics Combine(const std::vector<ProbeMetrics> &runs, bool stddev,
                     const ProbeMetrics *mean) {
  ProbeMetrics out;
  const double n = static_cast<double>(runs.size());
  auto agg = [&](auto get) {
    double s = 0.0;
    for (const ProbeMetrics &r : runs) {
      const double v = get(r);
      s += stddev ? (v - get(*mean)) * (v - get(*mean)) : v;
    }
    if (!stddev) return s / n;
    return runs.size() > 1 ? std::sqrt(s / (n - 1)) : 0.0;
  };
  out.relation = agg([](const ProbeMetrics &r) { return r.relation; });
  out.attribute = agg([](const ProbeMetrics &r) { return r.attribute; });
  for (int g = 0; g < 3; ++g) {
    out.attribute_by_group[g] =
        agg([g](const ProbeMetrics &r) { return r.attribute_by_group[g]; });
  }
  out.class_accuracy = agg([](const ProbeMetrics &r) { return r.class_accuracy; });
  return out;
}

}  // namespace

const char *ToyModeName(ToyMode mode) {
  return mode == ToyMode::kBaseline ? "baseline" : "assisted";
}

uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b) {
  return SplitMix(SplitMix(SplitMix(seed) ^ a) + b);
}

ToyEncoder ToyEncoder::Create(int input, int hidden, int visual, int num_classes,
                              uint64_t seed) {
  std::mt19937_64 rng(seed);
  ToyEncoder e;
  e.w1 = Uniform(hidden, input, &rng);
  e.b1 = Tensor({hidden});
  e.w2 = Uniform(visual, hidden, &rng);
  e.b2 = Tensor({visual});
  e.class_w = Uniform(num_classes, visual, &rng);
  e.class_b = Tensor({num_classes});
  e.object_w = Uniform(1, visual, &rng);
  e.object_b = Tensor({1});
  return e;
}

std::vector<Tensor *> ToyEncoder::Parameters() {
  return {&w1, &b1, &w2, &b2, &class_w, &class_b, &object_w, &object_b};
}

Tensor ToyEncoder::Features(const Tensor &inputs) const {
  return TanhOf(LinearForward(TanhOf(LinearForward(inputs, w1, b1)), w2, b2));
}

ToyEncoderVars EncodeObjects(Tape &tape, ToyEncoder &e, const Tensor &inputs) {
  Var x = tape.Constant(inputs);
  Var h = tape.Tanh(tape.Linear(x, tape.Param(&e.w1), tape.Param(&e.b1)));
  Var f = tape.Tanh(tape.Linear(h, tape.Param(&e.w2), tape.Param(&e.b2)));
  ToyEncoderVars v;
  v.features = f;
  v.class_logits = tape.Linear(f, tape.Param(&e.class_w), tape.Param(&e.class_b));
  v.object_logit = tape.Linear(f, tape.Param(&e.object_w), tape.Param(&e.object_b));
  return v;
}

Tensor SceneInputs(const ToyWorld &world, const ToyScene &scene) {
  const int n = static_cast<int>(scene.objects.size());
  const int width = world.InputWidth();
  Tensor x({n, width});
  for (int i = 0; i < n; ++i) {
    const std::vector<double> row = world.EncoderInput(scene.objects[i]);
    for (int c = 0; c < width; ++c) x.at(i, c) = row[c];
  }
  return x;
}

TrainingReport TrainToy(const ToyTrainConfig &config) {
  ValidateWeights(config.weights);
  if (config.steps < 0 || config.scenes_per_step < 1 ||
      config.descriptions_per_scene < 1) {
    throw std::invalid_argument(
        "toy training needs steps >= 0, at least one scene per step and one "
        "description per scene");
  }
  const ToyWorld world(config.world);
  const ClassList &classes = world.classes();
  const Vocabulary vocab = ToyVocabulary(config.num_relations);
  const DependencyMatrix dep = ToyDependencyMatrix().Prefix(config.num_relations);
  const LabelContext ctx{&vocab, &dep, &classes};
  const Parser parser(ParserLexicons::Default());
  const WordIndex words = ToyWordIndex(world);
  const bool assisted = config.mode == ToyMode::kAssisted;

  ToyEncoder encoder =
      ToyEncoder::Create(world.InputWidth(), config.hidden, config.visual,
                         classes.size(), MixSeed(config.seed, kEncoderInit));
  ModelDims dims;
  dims.vocab_size = words.size();
  dims.embed = config.embed;
  dims.lang = config.lang;
  dims.visual = config.visual;
  dims.fused = config.fusion == FusionMode::kCrossAttention ? config.lang : config.fused;
  dims.num_classes = classes.size();
  dims.num_relations = vocab.num_relations();
  dims.num_attributes = vocab.num_attribute_classes();
  dims.fusion = config.fusion;
  AuxModel model = AuxModel::Create(dims, MixSeed(config.seed, kModelInit));

  TrainingReport report;
  report.config = config;
  const int batch = config.scenes_per_step;
  const double inv_batch = 1.0 / batch;
  for (int step = 0; step < config.steps; ++step) {
    try {
      Tape tape;
      AuxModelVars vars;
      if (assisted) vars = AuxModelVars::Bind(tape, model);
      std::vector<Var> scene_losses;
      double perception_sum = 0.0, text_sum = 0.0, rel_sum = 0.0, attr_sum = 0.0;
      for (int b = 0; b < batch; ++b) {
        const uint64_t index = static_cast<uint64_t>(step) * batch + b;
        const ToyScene scene = world.Generate(MixSeed(config.seed, kTrainScene, index));
        const int n = static_cast<int>(scene.objects.size());
        const ToyEncoderVars ev = EncodeObjects(tape, encoder, SceneInputs(world, scene));

        std::vector<Var> class_terms;
        for (int i = 0; i < n; ++i) {
          class_terms.push_back(tape.SoftmaxCrossEntropy(
              tape.Row(ev.class_logits, i), scene.objects[i].class_id));
        }
        Var class_loss = tape.Scale(tape.Sum(class_terms), 1.0 / n);
        Var object_loss = tape.MaskedBce(ev.object_logit, std::vector<double>(n, 1.0),
                                         UndeterminedMode::kMask);
        Var perception = tape.Add(class_loss, object_loss);
        perception_sum += tape.value(perception)[0];
        if (!assisted) {
          scene_losses.push_back(perception);
          continue;
        }

        // Objects are described in a shuffled round-robin order.
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::mt19937_64 text_rng(MixSeed(config.seed, kTrainText, index));
        std::shuffle(order.begin(), order.end(), text_rng);
        std::vector<int> referents;
        for (int k = 0; k < config.descriptions_per_scene; ++k) {
          referents.push_back(order[k % n]);
        }

        std::vector<uint8_t> objectness(n);
        const Tensor &object_logits = tape.value(ev.object_logit);
        for (int i = 0; i < n; ++i) objectness[i] = object_logits[i] > 0.0 ? 1 : 0;

        std::vector<Var> text_terms, relation_terms, attribute_terms;
        for (int referent : referents) {
          const ToyDescription desc = world.Render(scene, referent, text_rng());
          const Description text = NormalizeAndTokenize(desc.text, desc.referent);
          const SceneGraph graph = parser.Parse(parser.ResolveCoreference(text));
          if (!graph.parse_ok) ++report.parse_failures;
          const AuxTargets targets = GenerateTargets(graph, desc.referent, ctx);

          const LanguageEncoding lang =
              EncodeLanguage(tape, vars, words.Encode(text.tokens));
          Var fused = Fuse(tape, vars, lang, ev.features);
          AuxLossReport aux_report;
          const AuxLossVars terms = BuildAuxLosses(
              tape, vars, lang.f_lang, fused, tape.value(ev.class_logits),
              objectness, targets, config.loss_options, &aux_report);
          report.relation_items += aux_report.relation_items;
          report.relation_skipped += aux_report.relation_skipped;
          report.attribute_items += aux_report.attribute_items;
          report.attribute_skipped += aux_report.attribute_skipped;
          text_sum += aux_report.text;
          rel_sum += aux_report.relation;
          attr_sum += aux_report.attribute;
          text_terms.push_back(terms.text);
          relation_terms.push_back(terms.relation);
          attribute_terms.push_back(terms.attribute);
        }
        const AuxLossVars aux{tape.Sum(text_terms), tape.Sum(relation_terms),
                              tape.Sum(attribute_terms)};
        scene_losses.push_back(OverallLoss(tape, perception, aux, config.weights));
      }
      Var total = tape.Scale(tape.Sum(scene_losses), inv_batch);
      const double loss = tape.value(total)[0];
      if (!std::isfinite(loss)) throw DivergenceError(step, "loss is not finite");
      report.loss.push_back(loss);
      report.perception.push_back(perception_sum * inv_batch);
      report.text.push_back(text_sum * inv_batch);
      report.relation.push_back(rel_sum * inv_batch);
      report.attribute.push_back(attr_sum * inv_batch);

      tape.Backward(total);
      Step(encoder.Parameters(), config.learning_rate);
      if (assisted) Step(model.Parameters(), config.learning_rate);
    } catch (const std::invalid_argument &e) {
      // Kernels reject non-finite activations once the weights blow up.
      throw DivergenceError(step, e.what());
    }
  }
  report.probe = EvaluateProbes(world, encoder, config);
  return report;
}

ProbeMetrics EvaluateProbes(const ToyWorld &world, const ToyEncoder &encoder,
                            const ToyTrainConfig &config) {
  return EvaluateWith(
      world,
      [&](const ToyScene &scene) {
        return encoder.Features(SceneInputs(world, scene));
      },
      config);
}

ProbeMetrics EvaluateProbes(const ToyWorld &world, const ObjectFeatureFn &features,
                            const ToyTrainConfig &config) {
  return EvaluateWith(
      world,
      [&](const ToyScene &scene) {
        const int n = static_cast<int>(scene.objects.size());
        std::vector<double> data;
        int width = 0;
        for (int i = 0; i < n; ++i) {
          const std::vector<double> f = features(scene, i);
          width = static_cast<int>(f.size());
          data.insert(data.end(), f.begin(), f.end());
        }
        return Tensor({n, width}, std::move(data));
      },
      config);
}

std::vector<AblationVariant> TaskAblationVariants(const ToyTrainConfig &base) {
  const LossWeights &w = base.weights;
  const int k = base.num_relations;
  return {
      {"baseline", ToyMode::kBaseline, {0.0, 0.0, 0.0}, k},
      {"+relation", ToyMode::kAssisted, {w.alpha, w.beta, 0.0}, k},
      {"+attribute", ToyMode::kAssisted, {w.alpha, 0.0, w.gamma}, k},
      {"+relation+attribute", ToyMode::kAssisted, w, k},
  };
}

std::vector<AblationVariant> VocabularyAblationVariants(
    const ToyTrainConfig &base, const std::vector<int> &sizes) {
  std::vector<AblationVariant> out;
  for (int k : sizes) {
    out.push_back({"+relation+attribute K_r=" + std::to_string(k),
                   ToyMode::kAssisted, base.weights, k});
  }
  return out;
}

std::vector<AblationRow> RunAblation(const ToyTrainConfig &base,
                                     const std::vector<AblationVariant> &variants,
                                     int num_seeds, int threads) {
  if (num_seeds < 1) throw std::invalid_argument("ablation needs at least one seed");
  const int jobs = static_cast<int>(variants.size()) * num_seeds;
  std::vector<ProbeMetrics> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int job = next++; job < jobs; job = next++) {
      const AblationVariant &v = variants[job / num_seeds];
      ToyTrainConfig config = base;
      config.mode = v.mode;
      config.weights = v.weights;
      config.num_relations = v.num_relations;
      config.seed = base.seed + static_cast<uint64_t>(job % num_seeds);
      try {
        results[job] = TrainToy(config).probe;
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min(threads, jobs));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool) t.join();
  for (const std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<AblationRow> rows;
  for (size_t v = 0; v < variants.size(); ++v) {
    AblationRow row;
    row.variant = variants[v];
    row.per_seed.assign(results.begin() + v * num_seeds,
                        results.begin() + (v + 1) * num_seeds);
    row.mean = Combine(row.per_seed, false, nullptr);
    row.stddev = Combine(row.per_seed, true, &row.mean);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace langaux
