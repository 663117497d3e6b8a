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

#ifndef LANGAUX_TESTS_SUPPORT_LOSS_ORACLE_H_
#define LANGAUX_TESTS_SUPPORT_LOSS_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "langaux/aux_losses.h"

// Random auxiliary-loss fixtures and an exhaustive-enumeration reference
// written directly from the loss definitions, independent of the kernels.

namespace langaux::testing {

struct LossFixture {
  int m = 0;
  int classes = 0;
  Tensor fused, scores, relation_w, relation_b, attribute_w, attribute_b;
  Tensor f_lang, text_w, text_b;
  std::vector<uint8_t> objectness;
  AuxTargets targets;
  AuxLossOptions opts;

  AuxLossInputs Inputs() const {
    return {&fused,  &scores,     &objectness, &f_lang,      &text_w,
            &text_b, &relation_w, &relation_b, &attribute_w, &attribute_b};
  }
};

inline Tensor RandomTensor(std::vector<int> shape, std::mt19937_64 &rng,
                           double scale) {
  Tensor t(std::move(shape));
  std::normal_distribution<double> n(0.0, scale);
  for (double &v : t.values()) v = n(rng);
  return t;
}

// Up to 12 clusters, up to 4 relation and 4 attribute items.
inline LossFixture MakeLossFixture(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  LossFixture f;
  f.m = uniform(1, 12);
  f.classes = uniform(2, 5);
  const int width = uniform(2, 6), k_r = uniform(2, 8), k_a = uniform(2, 6);
  f.fused = RandomTensor({f.m, width}, rng, 1.0);
  f.scores = RandomTensor({f.m, f.classes}, rng, 1.0);
  // Exact score ties exercise the lowest-index argmax rule.
  if (uniform(0, 3) == 0) f.scores.at(0, 1) = f.scores.at(0, 0);
  for (int i = 0; i < f.m; ++i) f.objectness.push_back(uniform(0, 4) > 0);
  f.relation_w = RandomTensor({k_r, 2 * width}, rng, 0.8);
  f.relation_b = RandomTensor({k_r}, rng, 0.3);
  f.attribute_w = RandomTensor({k_a, width}, rng, 0.8);
  f.attribute_b = RandomTensor({k_a}, rng, 0.3);
  f.f_lang = RandomTensor({3}, rng, 1.0);
  f.text_w = RandomTensor({f.classes, 3}, rng, 1.0);
  f.text_b = RandomTensor({f.classes}, rng, 0.1);
  f.targets.text_class = uniform(0, f.classes - 1);
  const int triples = uniform(0, 4);
  for (int t = 0; t < triples; ++t) {
    RelationItem item;
    item.subject_class = uniform(0, f.classes - 1);
    item.object_class = uniform(0, f.classes - 1);
    item.relation = uniform(0, k_r - 1);
    for (int k = 0; k < k_r; ++k) item.targets.push_back(uniform(0, 2) * 0.5);
    item.targets[item.relation] = 1.0;
    f.targets.relation_items.push_back(item);
  }
  const int attributes = uniform(0, 4);
  for (int a = 0; a < attributes; ++a) {
    f.targets.attribute_items.push_back(
        {uniform(0, f.classes - 1), uniform(0, k_a - 1)});
  }
  f.opts.mode = uniform(0, 1) ? UndeterminedMode::kMask : UndeterminedMode::kLiteral;
  f.opts.relation_objectness = uniform(0, 3) > 0;
  f.opts.attribute_objectness = uniform(0, 1) > 0;
  f.opts.debug = true;
  return f;
}

inline int OracleArgmaxClass(const LossFixture &f, int i) {
  int best = 0;
  for (int c = 1; c < f.classes; ++c) {
    if (f.scores.at(i, c) > f.scores.at(i, best)) best = c;
  }
  return best;
}

inline bool OracleIsCandidate(const LossFixture &f, int i, int cls,
                              bool use_objectness) {
  return OracleArgmaxClass(f, i) == cls && (!use_objectness || f.objectness[i]);
}

inline double OraclePairLoss(const LossFixture &f, const RelationItem &item,
                             int i, int j) {
  const int k_r = f.relation_w.rows(), width = f.fused.cols();
  double sum = 0.0;
  int active = 0;
  for (int k = 0; k < k_r; ++k) {
    const double y = item.targets[k];
    if (y == 0.5 && f.opts.mode == UndeterminedMode::kMask) continue;
    double z = f.relation_b[k];
    for (int c = 0; c < width; ++c) z += f.relation_w.at(k, c) * f.fused.at(i, c);
    for (int c = 0; c < width; ++c) {
      z += f.relation_w.at(k, width + c) * f.fused.at(j, c);
    }
    double p = 1.0 / (1.0 + std::exp(-z));
    p = std::min(std::max(p, kBceEpsilon), 1.0 - kBceEpsilon);
    sum += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    ++active;
  }
  return active == 0 ? 0.0 : sum / active;
}

inline double OracleAttributeLoss(const LossFixture &f, int i, int target) {
  const int k_a = f.attribute_w.rows(), width = f.fused.cols();
  std::vector<double> z(k_a);
  double max_z = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < k_a; ++k) {
    z[k] = f.attribute_b[k];
    for (int c = 0; c < width; ++c) z[k] += f.attribute_w.at(k, c) * f.fused.at(i, c);
    max_z = std::max(max_z, z[k]);
  }
  double norm = 0.0;
  for (double v : z) norm += std::exp(v - max_z);
  return std::log(norm) - (z[target] - max_z);
}

struct OracleLosses {
  double relation = 0.0;
  double attribute = 0.0;
  // Every enumerated candidate loss, per item.
  std::vector<std::vector<double>> relation_pairs;
  std::vector<std::vector<double>> attribute_candidates;
};

inline OracleLosses EnumerateOracle(const LossFixture &f) {
  OracleLosses out;
  for (const RelationItem &item : f.targets.relation_items) {
    std::vector<double> losses;
    for (int i = 0; i < f.m; ++i) {
      if (!OracleIsCandidate(f, i, item.subject_class, f.opts.relation_objectness)) {
        continue;
      }
      for (int j = 0; j < f.m; ++j) {
        if (j != i &&
            OracleIsCandidate(f, j, item.object_class, f.opts.relation_objectness)) {
          losses.push_back(OraclePairLoss(f, item, i, j));
        }
      }
    }
    if (!losses.empty()) out.relation += *std::min_element(losses.begin(), losses.end());
    out.relation_pairs.push_back(std::move(losses));
  }
  for (const AttributeItem &item : f.targets.attribute_items) {
    std::vector<double> losses;
    for (int i = 0; i < f.m; ++i) {
      if (OracleIsCandidate(f, i, item.entity_class, f.opts.attribute_objectness)) {
        losses.push_back(OracleAttributeLoss(f, i, item.attribute));
      }
    }
    if (!losses.empty()) {
      out.attribute += *std::min_element(losses.begin(), losses.end());
    }
    out.attribute_candidates.push_back(std::move(losses));
  }
  return out;
}

struct OracleComparison {
  double max_abs_error = 0.0;
  // Items whose reported loss exceeds some enumerated candidate loss.
  int min_property_violations = 0;
  // Largest amount by which a reported loss exceeds an enumerated candidate.
  double max_min_excess = 0.0;
  int enumerated = 0;
  int skipped_items = 0;
};

// Compares ComputeAuxLosses with the oracle. `tolerance` bounds the slack of
// the min property check.
inline OracleComparison CompareWithOracle(const LossFixture &f, double tolerance) {
  const AuxLossReport r = ComputeAuxLosses(f.Inputs(), f.targets, f.opts);
  const OracleLosses o = EnumerateOracle(f);
  OracleComparison c;
  c.max_abs_error = std::max(std::abs(r.relation - o.relation),
                             std::abs(r.attribute - o.attribute));
  auto check = [&](const std::vector<ItemTrace> &traces,
                   const std::vector<std::vector<double>> &candidates) {
    for (size_t t = 0; t < traces.size(); ++t) {
      if (candidates[t].empty()) {
        ++c.skipped_items;
        if (!traces[t].skipped) ++c.min_property_violations;
        continue;
      }
      const double best =
          *std::min_element(candidates[t].begin(), candidates[t].end());
      c.max_abs_error = std::max(c.max_abs_error, std::abs(traces[t].loss - best));
      for (double l : candidates[t]) {
        ++c.enumerated;
        c.max_min_excess = std::max(c.max_min_excess, traces[t].loss - l);
        if (traces[t].loss > l + tolerance) ++c.min_property_violations;
      }
    }
  };
  check(r.relation_trace, o.relation_pairs);
  check(r.attribute_trace, o.attribute_candidates);
  return c;
}

}  // namespace langaux::testing

#endif  // LANGAUX_TESTS_SUPPORT_LOSS_ORACLE_H_
