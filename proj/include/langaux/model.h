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

#ifndef LANGAUX_MODEL_H_
#define LANGAUX_MODEL_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "langaux/checkpoint.h"
#include "langaux/gru.h"
#include "langaux/tape.h"
#include "langaux/tensor.h"

namespace langaux {

enum class FusionMode {
  // fused_i = W [f_i; f_lang] + b
  kConcat,
  // q_i = W_q f_i + b_q; fused_i = LayerNorm(q_i + Attention(q_i, H, H))
  // where H holds the per-token GRU states.
  kCrossAttention,
};

const char *FusionModeName(FusionMode mode);
// Accepts "concat", "attn" and "cross_attention".
FusionMode ParseFusionMode(const std::string &name);

// Token to embedding-row map. Row 0 is reserved for unknown tokens.
class WordIndex {
 public:
  static constexpr int kUnknown = 0;

  WordIndex();
  int Add(const std::string &word);
  int Lookup(const std::string &word) const;
  std::vector<int> Encode(const std::vector<std::string> &tokens) const;
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::string> &words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
};

struct ModelDims {
  int vocab_size = 1;
  int embed = 16;     // d_e
  int lang = 32;      // c_l
  int visual = 32;    // c_v
  int fused = 32;     // c_f; equals c_l in cross-attention mode
  int num_classes = 19;     // N_c
  int num_relations = 8;    // K_r
  int num_attributes = 27;  // K_a + 1
  FusionMode fusion = FusionMode::kConcat;
};

// Trainable parameters of the language branch, the fusion module and the
// three auxiliary heads.
struct AuxModel {
  ModelDims dims;
  Tensor embedding;  // [vocab x embed]
  GruParams gru;
  // Concat fusion.
  Tensor fuse_w, fuse_b;
  // Cross-attention fusion.
  Tensor query_w, query_b, norm_gain, norm_bias;
  Tensor text_w, text_b;
  Tensor relation_w, relation_b;
  Tensor attribute_w, attribute_b;

  // Embedding uniform(-0.1, 0.1); weight matrices uniform(-1/sqrt(fan_in),
  // 1/sqrt(fan_in)); biases zero; layer-norm gain one.
  static AuxModel Create(const ModelDims &dims, uint64_t seed);

  NamedTensorRefs Named() const;
  std::vector<Tensor *> Parameters();
  // Copies values by name; shapes must match.
  void Load(const NamedTensors &tensors);
};

// Tape handles of the parameters of one AuxModel.
struct AuxModelVars {
  Var embedding;
  std::array<Var, GruParams::kNumTensors> gru;
  Var fuse_w, fuse_b;
  Var query_w, query_b, norm_gain, norm_bias;
  Var text_w, text_b;
  Var relation_w, relation_b;
  Var attribute_w, attribute_b;
  FusionMode fusion = FusionMode::kConcat;

  static AuxModelVars Bind(Tape &tape, AuxModel &model);
  // Records the parameters as constants (no gradient).
  static AuxModelVars BindConstant(Tape &tape, const AuxModel &model);
};

struct LanguageEncoding {
  Var f_lang;        // [c_l]
  Var token_states;  // [T x c_l]
};

// Embeds token ids and runs the GRU. Throws std::invalid_argument for an
// empty sequence.
LanguageEncoding EncodeLanguage(Tape &tape, const AuxModelVars &vars,
                                const std::vector<int> &token_ids);

// Per-cluster fused features [M x c_f] from cluster features [M x c_v].
Var Fuse(Tape &tape, const AuxModelVars &vars, const LanguageEncoding &lang,
         Var cluster_features);

}  // namespace langaux

#endif  // LANGAUX_MODEL_H_
