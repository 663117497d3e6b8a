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

#include "langaux/aux_losses.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace langaux {
namespace {

Tensor RowOf(const Tensor &m, int r) {
  const auto row = m.row(r);
  return Tensor::Vector({row.begin(), row.end()});
}

Tensor ConcatRows(const Tensor &m, int i, int j) {
  std::vector<double> v;
  v.reserve(2 * m.cols());
  for (double x : m.row(i)) v.push_back(x);
  for (double x : m.row(j)) v.push_back(x);
  return Tensor::Vector(std::move(v));
}

double PairLoss(const Tensor &fused, int i, int j, const Tensor &w,
                const Tensor &b, const std::vector<double> &y,
                UndeterminedMode mode) {
  const Tensor logits = LinearForward(ConcatRows(fused, i, j), w, b);
  return MaskedBce(logits.data(), y, mode).loss;
}

double AttributeCandidateLoss(const Tensor &fused, int i, const Tensor &w,
                              const Tensor &b, int target) {
  const Tensor logits = LinearForward(RowOf(fused, i), w, b);
  return SoftmaxCrossEntropy(logits.data(), target).loss;
}

// Per-item candidate enumeration and minimum. Loss values come from the
// same kernels the tape records.
struct ItemEvaluator {
  const Tensor &fused;
  const Tensor &scores;
  const std::vector<uint8_t> &objectness;
  const AuxLossOptions &opts;

  ItemTrace Relation(const RelationItem &item, const Tensor &w,
                     const Tensor &b) const {
    ItemTrace t;
    const auto subjects = SelectCandidates(scores, objectness, item.subject_class,
                                           opts.relation_objectness);
    const auto objects = SelectCandidates(scores, objectness, item.object_class,
                                          opts.relation_objectness);
    for (int i : subjects) {
      for (int j : objects) {
        if (i == j) continue;
        t.pairs.emplace_back(i, j);
        t.losses.push_back(PairLoss(fused, i, j, w, b, item.targets, opts.mode));
      }
    }
    Finish(&t);
    return t;
  }

  ItemTrace Attribute(const AttributeItem &item, const Tensor &w,
                      const Tensor &b) const {
    ItemTrace t;
    for (int i : SelectCandidates(scores, objectness, item.entity_class,
                                  opts.attribute_objectness)) {
      t.pairs.emplace_back(i, i);
      t.losses.push_back(AttributeCandidateLoss(fused, i, w, b, item.attribute));
    }
    Finish(&t);
    return t;
  }

  static void Finish(ItemTrace *t) {
    if (t->losses.empty()) {
      t->skipped = true;
      return;
    }
    // Pairs are enumerated in lexicographic order, so a strict comparison
    // keeps the lowest (i, j) among exact ties.
    t->argmin = 0;
    for (size_t k = 1; k < t->losses.size(); ++k) {
      if (t->losses[k] < t->losses[t->argmin]) t->argmin = static_cast<int>(k);
    }
    t->loss = t->losses[t->argmin];
  }
};

void CheckTargets(const AuxTargets &targets, int num_relations,
                  int num_attributes) {
  for (const RelationItem &item : targets.relation_items) {
    if (static_cast<int>(item.targets.size()) != num_relations) {
      throw ShapeError("relation target width " +
                       std::to_string(item.targets.size()) +
                       " does not match relation head width " +
                       std::to_string(num_relations));
    }
  }
  for (const AttributeItem &item : targets.attribute_items) {
    if (item.attribute < 0 || item.attribute >= num_attributes) {
      throw std::invalid_argument("attribute class " +
                                  std::to_string(item.attribute) +
                                  " out of range");
    }
  }
}

void Record(const ItemTrace &t, bool debug, int *items, int *skipped,
            std::vector<ItemTrace> *trace) {
  ++*items;
  if (t.skipped) ++*skipped;
  if (debug) trace->push_back(t);
}

}  // namespace

int ClusterSet::PredictedClass(int i) const {
  const auto row = semantic_scores.row(i);
  int best = 0;
  for (int c = 1; c < static_cast<int>(row.size()); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

std::vector<int> SelectCandidates(const Tensor &semantic_scores,
                                  const std::vector<uint8_t> &objectness,
                                  int wanted_class, bool use_objectness) {
  const int m = static_cast<int>(objectness.size());
  if (semantic_scores.rank() != 2 || semantic_scores.rows() != m) {
    throw ShapeError("semantic scores " + semantic_scores.ShapeString() +
                     " do not match " + std::to_string(m) + " clusters");
  }
  if (wanted_class < 0 || wanted_class >= semantic_scores.cols()) {
    throw std::invalid_argument("class id " + std::to_string(wanted_class) +
                                " out of range");
  }
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    const auto row = semantic_scores.row(i);
    int best = 0;
    for (int c = 1; c < static_cast<int>(row.size()); ++c) {
      if (row[c] > row[best]) best = c;
    }
    if (best != wanted_class) continue;
    if (use_objectness && objectness[i] == 0) continue;
    out.push_back(i);
  }
  return out;
}

std::vector<int> SelectCandidates(const ClusterSet &clusters, int wanted_class,
                                  bool use_objectness) {
  return SelectCandidates(clusters.semantic_scores, clusters.objectness,
                          wanted_class, use_objectness);
}

void ValidateWeights(const LossWeights &w) {
  for (double v : {w.alpha, w.beta, w.gamma}) {
    if (!std::isfinite(v) || v < 0) {
      throw std::invalid_argument("loss weights must be finite and non-negative");
    }
  }
}

AuxLossReport ComputeAuxLosses(const AuxLossInputs &in, const AuxTargets &targets,
                               const AuxLossOptions &opts) {
  CheckTargets(targets, in.relation_w->rows(), in.attribute_w->rows());
  AuxLossReport report;
  const Tensor text_logits = LinearForward(*in.f_lang, *in.text_w, *in.text_b);
  report.text = SoftmaxCrossEntropy(text_logits.data(), targets.text_class).loss;

  const ItemEvaluator eval{*in.fused, *in.semantic_scores, *in.objectness, opts};
  for (const RelationItem &item : targets.relation_items) {
    const ItemTrace t = eval.Relation(item, *in.relation_w, *in.relation_b);
    if (!t.skipped) report.relation += t.loss;
    Record(t, opts.debug, &report.relation_items, &report.relation_skipped,
           &report.relation_trace);
  }
  for (const AttributeItem &item : targets.attribute_items) {
    const ItemTrace t = eval.Attribute(item, *in.attribute_w, *in.attribute_b);
    if (!t.skipped) report.attribute += t.loss;
    Record(t, opts.debug, &report.attribute_items, &report.attribute_skipped,
           &report.attribute_trace);
  }
  return report;
}

AuxLossVars BuildAuxLosses(Tape &tape, const AuxModelVars &vars, Var f_lang,
                           Var fused, const Tensor &semantic_scores,
                           const std::vector<uint8_t> &objectness,
                           const AuxTargets &targets, const AuxLossOptions &opts,
                           AuxLossReport *report) {
  CheckTargets(targets, tape.value(vars.relation_w).rows(),
               tape.value(vars.attribute_w).rows());
  AuxLossReport local;
  AuxLossReport &r = report != nullptr ? *report : local;
  AuxLossVars out;

  Var text_logits = tape.Linear(f_lang, vars.text_w, vars.text_b);
  out.text = tape.SoftmaxCrossEntropy(text_logits, targets.text_class);
  r.text = tape.value(out.text)[0];

  const ItemEvaluator eval{tape.value(fused), semantic_scores, objectness, opts};
  std::vector<Var> relation_terms;
  for (const RelationItem &item : targets.relation_items) {
    const ItemTrace t = eval.Relation(item, tape.value(vars.relation_w),
                                      tape.value(vars.relation_b));
    if (!t.skipped) {
      const auto [i, j] = t.pairs[t.argmin];
      Var pair = tape.Concat(tape.Row(fused, i), tape.Row(fused, j));
      Var logits = tape.Linear(pair, vars.relation_w, vars.relation_b);
      relation_terms.push_back(tape.MaskedBce(logits, item.targets, opts.mode));
    }
    Record(t, opts.debug, &r.relation_items, &r.relation_skipped,
           &r.relation_trace);
  }
  std::vector<Var> attribute_terms;
  for (const AttributeItem &item : targets.attribute_items) {
    const ItemTrace t = eval.Attribute(item, tape.value(vars.attribute_w),
                                       tape.value(vars.attribute_b));
    if (!t.skipped) {
      Var logits = tape.Linear(tape.Row(fused, t.pairs[t.argmin].first),
                               vars.attribute_w, vars.attribute_b);
      attribute_terms.push_back(tape.SoftmaxCrossEntropy(logits, item.attribute));
    }
    Record(t, opts.debug, &r.attribute_items, &r.attribute_skipped,
           &r.attribute_trace);
  }
  out.relation = tape.Sum(relation_terms);
  out.attribute = tape.Sum(attribute_terms);
  r.relation = tape.value(out.relation)[0];
  r.attribute = tape.value(out.attribute)[0];
  return out;
}

double OverallLoss(double perception, double text, double relation,
                   double attribute, const LossWeights &w) {
  ValidateWeights(w);
  for (double v : {perception, text, relation, attribute}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("overall loss term is not finite");
    }
  }
  double total = 0.0;
  total += perception;
  total += w.alpha * text;
  total += w.beta * relation;
  total += w.gamma * attribute;
  return total;
}

Var OverallLoss(Tape &tape, Var perception, const AuxLossVars &aux,
                const LossWeights &w) {
  ValidateWeights(w);
  for (Var v : {perception, aux.text, aux.relation, aux.attribute}) {
    if (!std::isfinite(tape.value(v)[0])) {
      throw std::invalid_argument("overall loss term is not finite");
    }
  }
  const Var terms[] = {perception, tape.Scale(aux.text, w.alpha),
                       tape.Scale(aux.relation, w.beta),
                       tape.Scale(aux.attribute, w.gamma)};
  return tape.Sum(terms);
}

}  // namespace langaux
