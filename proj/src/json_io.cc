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

#include "langaux/json_io.h"

#include <stdexcept>

namespace langaux {
namespace {

Json Span(const TokenSpan &s) { return Json::array({s.begin, s.end}); }

TokenSpan SpanFrom(const Json &j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("span must be a [begin, end] pair");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

template <typename F>
auto Guarded(const char *what, F f) {
  try {
    return f();
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("invalid ") + what + ": " + e.what());
  }
}

Json Metrics(const ProbeMetrics &m) {
  return Json{{"relation", m.relation},
              {"attribute", m.attribute},
              {"attribute_color", m.attribute_by_group[0]},
              {"attribute_shape", m.attribute_by_group[1]},
              {"attribute_size", m.attribute_by_group[2]},
              {"class", m.class_accuracy}};
}

Json Weights(const LossWeights &w) {
  return Json{{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
}

Json Trace(const ItemTrace &t) {
  Json pairs = Json::array();
  for (const auto &[i, j] : t.pairs) pairs.push_back(Json::array({i, j}));
  return Json{{"skipped", t.skipped},
              {"pairs", pairs},
              {"losses", t.losses},
              {"argmin", t.argmin},
              {"loss", t.loss}};
}

}  // namespace

Json ToJson(const SceneGraph &g) {
  Json entities = Json::array();
  for (const EntityMention &e : g.entities) {
    entities.push_back(Json{{"head", e.head_noun},
                            {"attributes", e.attributes},
                            {"span", Span(e.span)},
                            {"sentence", e.sentence}});
  }
  Json triples = Json::array();
  for (const RelationTriple &t : g.triples) {
    triples.push_back(Json{{"subject", t.subject},
                           {"relation", t.relation},
                           {"relation_phrase", t.relation_phrase},
                           {"object", t.object},
                           {"span", Span(t.phrase_span)}});
  }
  return Json{{"tokens", g.tokens},
              {"entities", entities},
              {"triples", triples},
              {"relation_phrase_count", g.relation_phrase_count},
              {"parse_ok", g.parse_ok}};
}

SceneGraph SceneGraphFromJson(const Json &j) {
  return Guarded("scene graph", [&] {
    SceneGraph g;
    g.tokens = j.at("tokens").get<std::vector<std::string>>();
    for (const Json &e : j.at("entities")) {
      EntityMention m;
      m.head_noun = e.at("head").get<std::string>();
      m.attributes = e.at("attributes").get<std::vector<std::string>>();
      m.span = SpanFrom(e.at("span"));
      m.sentence = e.at("sentence").get<int>();
      g.entities.push_back(std::move(m));
    }
    const int n = static_cast<int>(g.entities.size());
    for (const Json &t : j.at("triples")) {
      RelationTriple r;
      r.subject = t.at("subject").get<int>();
      r.relation = t.at("relation").get<std::string>();
      r.relation_phrase = t.at("relation_phrase").get<std::string>();
      r.object = t.at("object").get<int>();
      r.phrase_span = SpanFrom(t.at("span"));
      if (r.subject < 0 || r.subject >= n || r.object < 0 || r.object >= n) {
        throw std::invalid_argument("triple references a missing entity");
      }
      g.triples.push_back(std::move(r));
    }
    g.relation_phrase_count = j.at("relation_phrase_count").get<int>();
    g.parse_ok = j.at("parse_ok").get<bool>();
    return g;
  });
}

Json ToJson(const AuxTargets &t) {
  Json relations = Json::array();
  for (const RelationItem &r : t.relation_items) {
    relations.push_back(Json{{"subject_class", r.subject_class},
                             {"object_class", r.object_class},
                             {"relation", r.relation},
                             {"targets", r.targets}});
  }
  Json attributes = Json::array();
  for (const AttributeItem &a : t.attribute_items) {
    attributes.push_back(
        Json{{"entity_class", a.entity_class}, {"attribute", a.attribute}});
  }
  return Json{{"text_class", t.text_class},
              {"relation_items", relations},
              {"attribute_items", attributes},
              {"referent_conflict", t.referent_conflict}};
}

AuxTargets AuxTargetsFromJson(const Json &j) {
  return Guarded("targets", [&] {
    AuxTargets t;
    t.text_class = j.at("text_class").get<int>();
    for (const Json &r : j.at("relation_items")) {
      RelationItem item;
      item.subject_class = r.at("subject_class").get<int>();
      item.object_class = r.at("object_class").get<int>();
      item.relation = r.at("relation").get<int>();
      item.targets = r.at("targets").get<std::vector<double>>();
      t.relation_items.push_back(std::move(item));
    }
    for (const Json &a : j.at("attribute_items")) {
      t.attribute_items.push_back(
          {a.at("entity_class").get<int>(), a.at("attribute").get<int>()});
    }
    if (j.contains("referent_conflict")) {
      t.referent_conflict = j.at("referent_conflict").get<bool>();
    }
    return t;
  });
}

Json ToJson(const CorpusStats &s) {
  Json j{{"descriptions", s.descriptions},
         {"with_triple", s.with_triple},
         {"with_attribute", s.with_attribute},
         {"with_relation_phrase", s.with_relation_phrase},
         {"parsed_with_relation", s.parsed_with_relation}};
  const auto rate = s.SuccessRate();
  j["parse_success_rate"] = rate ? Json(*rate) : Json(nullptr);
  j["relation_freq"] = s.relation_freq;
  j["attribute_freq"] = s.attribute_freq;
  return j;
}

Json ToJson(const Vocabulary &v) {
  Json attributes = Json::array();
  for (const std::string &a : v.attributes()) {
    const auto group = v.GroupOf(a);
    attributes.push_back(
        Json{{"name", a},
             {"group", group ? Json(std::string(AttributeGroupName(*group)))
                             : Json(nullptr)}});
  }
  return Json{{"relations", v.relations()}, {"attributes", attributes}};
}

Json ToJson(const AuxLossReport &r) {
  Json j{{"text", r.text},
         {"relation", r.relation},
         {"attribute", r.attribute},
         {"relation_items", r.relation_items},
         {"relation_skipped", r.relation_skipped},
         {"attribute_items", r.attribute_items},
         {"attribute_skipped", r.attribute_skipped}};
  Json rel = Json::array(), attr = Json::array();
  for (const ItemTrace &t : r.relation_trace) rel.push_back(Trace(t));
  for (const ItemTrace &t : r.attribute_trace) attr.push_back(Trace(t));
  j["relation_trace"] = rel;
  j["attribute_trace"] = attr;
  return j;
}

Json ToJson(const ProbeMetrics &m) {
  Json j = Metrics(m);
  j["relation_train_pairs"] = m.relation_train_pairs;
  j["relation_test_pairs"] = m.relation_test_pairs;
  return j;
}

Json ToJson(const ToyTrainConfig &c) {
  return Json{
      {"mode", ToyModeName(c.mode)},
      {"weights", Weights(c.weights)},
      {"steps", c.steps},
      {"learning_rate", c.learning_rate},
      {"scenes_per_step", c.scenes_per_step},
      {"descriptions_per_scene", c.descriptions_per_scene},
      {"seed", c.seed},
      {"num_relations", c.num_relations},
      {"fusion", FusionModeName(c.fusion)},
      {"mask_undetermined", c.loss_options.mode == UndeterminedMode::kMask},
      {"relation_objectness", c.loss_options.relation_objectness},
      {"attribute_objectness", c.loss_options.attribute_objectness},
      {"hidden", c.hidden},
      {"visual", c.visual},
      {"embed", c.embed},
      {"lang", c.lang},
      {"fused", c.fused},
      {"probe_train_scenes", c.probe_train_scenes},
      {"probe_test_scenes", c.probe_test_scenes},
      {"world",
       Json{{"next_to", c.world.next_to},
            {"relation_decay", c.world.relation_decay},
            {"noise_dims", c.world.noise_dims},
            {"code_dims", c.world.code_dims},
            {"group_spread", c.world.group_spread},
            {"max_groups", c.world.max_groups}}}};
}

Json ToJson(const TrainingReport &r) {
  return Json{{"config", ToJson(r.config)},
              {"seeds", Json::array({r.config.seed})},
              {"loss", r.loss},
              {"perception", r.perception},
              {"text", r.text},
              {"relation", r.relation},
              {"attribute", r.attribute},
              {"relation_items", r.relation_items},
              {"relation_skipped", r.relation_skipped},
              {"attribute_items", r.attribute_items},
              {"attribute_skipped", r.attribute_skipped},
              {"parse_failures", r.parse_failures},
              {"probe", ToJson(r.probe)}};
}

Json ToJson(const AblationRow &row) {
  Json seeds = Json::array();
  for (const ProbeMetrics &m : row.per_seed) seeds.push_back(Metrics(m));
  return Json{{"variant", row.variant.name},
              {"mode", ToyModeName(row.variant.mode)},
              {"weights", Weights(row.variant.weights)},
              {"num_relations", row.variant.num_relations},
              {"mean", Metrics(row.mean)},
              {"std", Metrics(row.stddev)},
              {"per_seed", seeds}};
}

Json ToJson(const GradCheckCase &c) {
  return Json{{"name", c.name},
              {"worst_rel_error", c.worst},
              {"worst_seed", c.worst_seed},
              {"tolerance", c.tolerance},
              {"seeds", c.seeds},
              {"passed", c.passed()}};
}

}  // namespace langaux
