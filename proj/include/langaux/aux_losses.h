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

#ifndef LANGAUX_AUX_LOSSES_H_
#define LANGAUX_AUX_LOSSES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "langaux/kernels.h"
#include "langaux/labels.h"
#include "langaux/model.h"
#include "langaux/tape.h"
#include "langaux/tensor.h"

namespace langaux {

// Object proposals of one scene.
struct ClusterSet {
  Tensor centers;          // [M x 3]
  Tensor features;         // [M x c_v]
  Tensor semantic_scores;  // [M x N_c]
  std::vector<uint8_t> objectness;

  int size() const { return static_cast<int>(objectness.size()); }
  // argmax of the score row; the lowest index wins ties.
  int PredictedClass(int i) const;
};

// Indices i, ascending, with argmax s_i == wanted_class and, if requested,
// m_i == 1.
std::vector<int> SelectCandidates(const Tensor &semantic_scores,
                                  const std::vector<uint8_t> &objectness,
                                  int wanted_class, bool use_objectness);
std::vector<int> SelectCandidates(const ClusterSet &clusters, int wanted_class,
                                  bool use_objectness);

struct LossWeights {
  double alpha = 0.1;   // text
  double beta = 0.05;   // relation
  double gamma = 0.05;  // attribute
};

// Throws std::invalid_argument for negative or non-finite weights.
void ValidateWeights(const LossWeights &w);

struct AuxLossOptions {
  UndeterminedMode mode = UndeterminedMode::kMask;
  bool relation_objectness = true;
  bool attribute_objectness = true;
  // Keep every enumerated pair loss in the report.
  bool debug = false;
};

struct ItemTrace {
  bool skipped = false;
  // Enumerated (subject, object) candidate pairs; for attribute items the
  // second index repeats the first.
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> losses;
  int argmin = -1;
  double loss = 0.0;
};

struct AuxLossReport {
  double text = 0.0;
  double relation = 0.0;
  double attribute = 0.0;
  int relation_items = 0;
  int relation_skipped = 0;
  int attribute_items = 0;
  int attribute_skipped = 0;
  // Filled only with AuxLossOptions::debug.
  std::vector<ItemTrace> relation_trace;
  std::vector<ItemTrace> attribute_trace;

  bool all_relation_skipped() const {
    return relation_items > 0 && relation_skipped == relation_items;
  }
  bool all_attribute_skipped() const {
    return attribute_items > 0 && attribute_skipped == attribute_items;
  }
};

// Value-level inputs of the auxiliary losses for one description.
struct AuxLossInputs {
  const Tensor *fused;            // [M x c_f]
  const Tensor *semantic_scores;  // [M x N_c]
  const std::vector<uint8_t> *objectness;
  const Tensor *f_lang;           // [c_l]
  const Tensor *text_w, *text_b;
  const Tensor *relation_w, *relation_b;
  const Tensor *attribute_w, *attribute_b;
};

// L_text, L_rel and L_attr without gradients. Uses the same kernels and
// accumulation order as the tape version, so values agree bitwise.
AuxLossReport ComputeAuxLosses(const AuxLossInputs &in, const AuxTargets &targets,
                               const AuxLossOptions &opts = {});

struct AuxLossVars {
  Var text;
  Var relation;
  Var attribute;
};

// Records the three auxiliary losses on a tape. Per item only the argmin
// pair (lowest (i, j) on exact ties) is recorded, so gradient flows through
// it alone. Items without candidates are skipped.
AuxLossVars BuildAuxLosses(Tape &tape, const AuxModelVars &vars, Var f_lang,
                           Var fused, const Tensor &semantic_scores,
                           const std::vector<uint8_t> &objectness,
                           const AuxTargets &targets, const AuxLossOptions &opts,
                           AuxLossReport *report);

// L_perception + alpha L_text + beta L_rel + gamma L_attr. Throws
// std::invalid_argument if any term is non-finite.
double OverallLoss(double perception, double text, double relation,
                   double attribute, const LossWeights &w);
Var OverallLoss(Tape &tape, Var perception, const AuxLossVars &aux,
                const LossWeights &w);

}  // namespace langaux

#endif  // LANGAUX_AUX_LOSSES_H_
