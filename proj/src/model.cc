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

#include "langaux/model.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace langaux {
namespace {

void FillUniform(Tensor *t, double bound, std::mt19937_64 *rng) {
  std::uniform_real_distribution<double> u(-bound, bound);
  for (double &v : t->values()) v = u(*rng);
}

Tensor Weight(int out, int in, std::mt19937_64 *rng) {
  Tensor w({out, in});
  FillUniform(&w, 1.0 / std::sqrt(static_cast<double>(in)), rng);
  return w;
}

}  // namespace

const char *FusionModeName(FusionMode mode) {
  return mode == FusionMode::kConcat ? "concat" : "cross_attention";
}

FusionMode ParseFusionMode(const std::string &name) {
  if (name == "concat") return FusionMode::kConcat;
  if (name == "attn" || name == "cross_attention") {
    return FusionMode::kCrossAttention;
  }
  throw std::invalid_argument("unknown fusion mode '" + name +
                              "' (expected concat or attn)");
}

WordIndex::WordIndex() { Add("<unk>"); }

int WordIndex::Add(const std::string &word) {
  auto [it, inserted] = ids_.emplace(word, size());
  if (inserted) words_.push_back(word);
  return it->second;
}

int WordIndex::Lookup(const std::string &word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? kUnknown : it->second;
}

std::vector<int> WordIndex::Encode(const std::vector<std::string> &tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string &t : tokens) ids.push_back(Lookup(t));
  return ids;
}

AuxModel AuxModel::Create(const ModelDims &dims, uint64_t seed) {
  if (dims.fusion == FusionMode::kCrossAttention && dims.fused != dims.lang) {
    throw std::invalid_argument("cross-attention fusion needs fused width == " +
                                std::string("language width"));
  }
  std::mt19937_64 rng(seed);
  AuxModel m;
  m.dims = dims;
  m.embedding = Tensor({dims.vocab_size, dims.embed});
  FillUniform(&m.embedding, 0.1, &rng);
  m.gru = GruParams::Create(dims.embed, dims.lang);
  for (Tensor *t : {&m.gru.w_z, &m.gru.w_r, &m.gru.w_h}) {
    *t = Weight(dims.lang, dims.embed, &rng);
  }
  for (Tensor *t : {&m.gru.u_z, &m.gru.u_r, &m.gru.u_h}) {
    *t = Weight(dims.lang, dims.lang, &rng);
  }
  if (dims.fusion == FusionMode::kConcat) {
    m.fuse_w = Weight(dims.fused, dims.visual + dims.lang, &rng);
    m.fuse_b = Tensor({dims.fused});
  } else {
    m.query_w = Weight(dims.lang, dims.visual, &rng);
    m.query_b = Tensor({dims.lang});
    m.norm_gain = Tensor({dims.lang}, std::vector<double>(dims.lang, 1.0));
    m.norm_bias = Tensor({dims.lang});
  }
  m.text_w = Weight(dims.num_classes, dims.lang, &rng);
  m.text_b = Tensor({dims.num_classes});
  m.relation_w = Weight(dims.num_relations, 2 * dims.fused, &rng);
  m.relation_b = Tensor({dims.num_relations});
  m.attribute_w = Weight(dims.num_attributes, dims.fused, &rng);
  m.attribute_b = Tensor({dims.num_attributes});
  return m;
}

NamedTensorRefs AuxModel::Named() const {
  NamedTensorRefs out = {{"embedding", &embedding}};
  const auto gru_tensors = gru.Tensors();
  for (int i = 0; i < GruParams::kNumTensors; ++i) {
    out.emplace_back("gru." + GruParams::Names()[i], gru_tensors[i]);
  }
  if (dims.fusion == FusionMode::kConcat) {
    out.emplace_back("fuse.w", &fuse_w);
    out.emplace_back("fuse.b", &fuse_b);
  } else {
    out.emplace_back("query.w", &query_w);
    out.emplace_back("query.b", &query_b);
    out.emplace_back("norm.gain", &norm_gain);
    out.emplace_back("norm.bias", &norm_bias);
  }
  out.emplace_back("text.w", &text_w);
  out.emplace_back("text.b", &text_b);
  out.emplace_back("relation.w", &relation_w);
  out.emplace_back("relation.b", &relation_b);
  out.emplace_back("attribute.w", &attribute_w);
  out.emplace_back("attribute.b", &attribute_b);
  return out;
}

std::vector<Tensor *> AuxModel::Parameters() {
  std::vector<Tensor *> out;
  for (const auto &[name, t] : Named()) out.push_back(const_cast<Tensor *>(t));
  return out;
}

void AuxModel::Load(const NamedTensors &tensors) {
  for (const auto &[name, t] : Named()) {
    bool found = false;
    for (const auto &[n, value] : tensors) {
      if (n != name) continue;
      if (!value.SameShape(*t)) {
        throw CheckpointError("shape mismatch for " + name + ": " +
                              value.ShapeString() + " vs " + t->ShapeString());
      }
      const_cast<Tensor *>(t)->values() = value.values();
      found = true;
      break;
    }
    if (!found) throw CheckpointError("checkpoint lacks tensor " + name);
  }
}

namespace {

template <typename BindFn>
AuxModelVars BindWith(const AuxModel &m, BindFn bind) {
  AuxModelVars v;
  v.fusion = m.dims.fusion;
  v.embedding = bind(m.embedding);
  const auto gru = m.gru.Tensors();
  for (int i = 0; i < GruParams::kNumTensors; ++i) v.gru[i] = bind(*gru[i]);
  if (m.dims.fusion == FusionMode::kConcat) {
    v.fuse_w = bind(m.fuse_w);
    v.fuse_b = bind(m.fuse_b);
  } else {
    v.query_w = bind(m.query_w);
    v.query_b = bind(m.query_b);
    v.norm_gain = bind(m.norm_gain);
    v.norm_bias = bind(m.norm_bias);
  }
  v.text_w = bind(m.text_w);
  v.text_b = bind(m.text_b);
  v.relation_w = bind(m.relation_w);
  v.relation_b = bind(m.relation_b);
  v.attribute_w = bind(m.attribute_w);
  v.attribute_b = bind(m.attribute_b);
  return v;
}

}  // namespace

AuxModelVars AuxModelVars::Bind(Tape &tape, AuxModel &model) {
  return BindWith(model, [&](const Tensor &t) {
    return tape.Param(const_cast<Tensor *>(&t));
  });
}

AuxModelVars AuxModelVars::BindConstant(Tape &tape, const AuxModel &model) {
  return BindWith(model, [&](const Tensor &t) { return tape.Constant(t); });
}

LanguageEncoding EncodeLanguage(Tape &tape, const AuxModelVars &vars,
                                const std::vector<int> &token_ids) {
  if (token_ids.empty()) {
    throw std::invalid_argument("cannot encode an empty token sequence");
  }
  Var embedded = tape.Gather(vars.embedding, token_ids);
  Var states = tape.Gru(embedded, vars.gru);
  Var last = tape.Row(states, static_cast<int>(token_ids.size()) - 1);
  return {last, states};
}

Var Fuse(Tape &tape, const AuxModelVars &vars, const LanguageEncoding &lang,
         Var cluster_features) {
  if (vars.fusion == FusionMode::kConcat) {
    Var joined = tape.ConcatBroadcast(cluster_features, lang.f_lang);
    return tape.Linear(joined, vars.fuse_w, vars.fuse_b);
  }
  Var q = tape.Linear(cluster_features, vars.query_w, vars.query_b);
  Var attended = tape.Attention(q, lang.token_states, lang.token_states);
  return tape.LayerNorm(tape.Add(q, attended), vars.norm_gain, vars.norm_bias);
}

}  // namespace langaux
