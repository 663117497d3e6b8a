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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace langaux {
namespace {

Tensor Scores(std::vector<int> classes, int num_classes) {
  Tensor s({static_cast<int>(classes.size()), num_classes});
  for (size_t i = 0; i < classes.size(); ++i) s.at(static_cast<int>(i), classes[i]) = 1.0;
  return s;
}

TEST(SelectCandidatesTest, FiltersByArgmaxAndObjectness) {
  const Tensor s = Scores({0, 1, 1, 2, 1}, 3);
  const std::vector<uint8_t> m{1, 1, 0, 1, 1};
  EXPECT_EQ(SelectCandidates(s, m, 1, true), (std::vector<int>{1, 4}));
  EXPECT_EQ(SelectCandidates(s, m, 1, false), (std::vector<int>{1, 2, 4}));
  EXPECT_TRUE(SelectCandidates(s, m, 2, true) == std::vector<int>{3});
  EXPECT_THROW(SelectCandidates(s, m, 3, true), std::invalid_argument);
  EXPECT_THROW(SelectCandidates(s, {1, 1}, 0, true), ShapeError);
}

TEST(SelectCandidatesTest, TiedScoresPickLowestClass) {
  const Tensor s = Tensor::Matrix(1, 3, {0.5, 0.5, 0.1});
  EXPECT_EQ(SelectCandidates(s, {1}, 0, true), std::vector<int>{0});
  EXPECT_TRUE(SelectCandidates(s, {1}, 1, true).empty());
  ClusterSet c{Tensor({1, 3}), Tensor({1, 2}), s, {1}};
  EXPECT_EQ(c.PredictedClass(0), 0);
}

struct Heads {
  Tensor fused, f_lang, text_w, text_b, relation_w, relation_b, attribute_w,
      attribute_b;
  AuxLossInputs Inputs(const Tensor &scores, const std::vector<uint8_t> &m) const {
    return {&fused,      &scores,     &m,           &f_lang,      &text_w,
            &text_b,     &relation_w, &relation_b,  &attribute_w, &attribute_b};
  }
};

Heads SimpleHeads() {
  Heads h;
  h.fused = Tensor::Matrix(3, 1, {0.0, 1.0, -1.0});
  h.f_lang = Tensor::Vector({1.0});
  h.text_w = Tensor::Matrix(2, 1, {0.0, 0.0});
  h.text_b = Tensor::Vector({0.0, 0.0});
  h.relation_w = Tensor::Matrix(1, 2, {1.0, 0.0});
  h.relation_b = Tensor::Vector({0.0});
  h.attribute_w = Tensor::Matrix(2, 1, {1.0, -1.0});
  h.attribute_b = Tensor::Vector({0.0, 0.0});
  return h;
}

TEST(ComputeAuxLossesTest, HandComputedMinimum) {
  const Heads h = SimpleHeads();
  const Tensor scores = Scores({0, 0, 0}, 2);
  const std::vector<uint8_t> m{1, 1, 1};
  AuxTargets t;
  t.text_class = 1;
  t.relation_items.push_back({0, 0, 0, {1.0}});
  t.attribute_items.push_back({0, 1});
  const AuxLossReport r = ComputeAuxLosses(h.Inputs(scores, m), t);
  EXPECT_NEAR(r.text, std::log(2.0), 1e-15);
  // Subject logit is fused[i]; the best subject is cluster 1 (logit 1).
  EXPECT_NEAR(r.relation, std::log(1.0 + std::exp(-1.0)), 1e-15);
  // Attribute 1 logit gap is -2 x fused[i]; cluster 2 is best.
  EXPECT_NEAR(r.attribute, std::log(1.0 + std::exp(-2.0)), 1e-15);
  EXPECT_EQ(r.relation_items, 1);
  EXPECT_EQ(r.relation_skipped, 0);
}

TEST(ComputeAuxLossesTest, ExactTieKeepsLowestPair) {
  Heads h = SimpleHeads();
  h.fused = Tensor::Matrix(3, 1, {2.0, 2.0, 2.0});
  const Tensor scores = Scores({0, 0, 0}, 2);
  const std::vector<uint8_t> m{1, 1, 1};
  AuxTargets t;
  t.relation_items.push_back({0, 0, 0, {1.0}});
  AuxLossOptions opts;
  opts.debug = true;
  const AuxLossReport r = ComputeAuxLosses(h.Inputs(scores, m), t, opts);
  ASSERT_EQ(r.relation_trace.size(), 1u);
  EXPECT_EQ(r.relation_trace[0].pairs.size(), 6u);
  EXPECT_EQ(r.relation_trace[0].argmin, 0);
  EXPECT_EQ(r.relation_trace[0].pairs[0], std::make_pair(0, 1));
}

TEST(ComputeAuxLossesTest, ItemsWithoutCandidatesAreSkipped) {
  const Heads h = SimpleHeads();
  const Tensor scores = Scores({0, 0, 1}, 2);
  const std::vector<uint8_t> m{1, 0, 1};
  AuxTargets t;
  t.relation_items.push_back({0, 0, 0, {1.0}});  // only cluster 0 remains
  t.relation_items.push_back({1, 0, 0, {1.0}});
  t.attribute_items.push_back({1, 0});
  const AuxLossReport r = ComputeAuxLosses(h.Inputs(scores, m), t);
  EXPECT_EQ(r.relation_items, 2);
  EXPECT_EQ(r.relation_skipped, 1);
  EXPECT_FALSE(r.all_relation_skipped());
  EXPECT_EQ(r.attribute_skipped, 0);
  EXPECT_NEAR(r.relation, std::log(1.0 + std::exp(1.0)), 1e-15);
}

TEST(ComputeAuxLossesTest, AllSkippedGivesZero) {
  const Heads h = SimpleHeads();
  const Tensor scores = Scores({0, 0, 0}, 2);
  const std::vector<uint8_t> m{1, 1, 1};
  AuxTargets t;
  t.relation_items.push_back({1, 1, 0, {1.0}});
  t.attribute_items.push_back({1, 0});
  const AuxLossReport r = ComputeAuxLosses(h.Inputs(scores, m), t);
  EXPECT_TRUE(r.all_relation_skipped());
  EXPECT_TRUE(r.all_attribute_skipped());
  EXPECT_EQ(r.relation, 0.0);
  EXPECT_EQ(r.attribute, 0.0);
}

TEST(ComputeAuxLossesTest, RejectsInconsistentTargets) {
  const Heads h = SimpleHeads();
  const Tensor scores = Scores({0, 0, 0}, 2);
  const std::vector<uint8_t> m{1, 1, 1};
  AuxTargets wide;
  wide.relation_items.push_back({0, 0, 0, {1.0, 0.0}});
  EXPECT_THROW(ComputeAuxLosses(h.Inputs(scores, m), wide), ShapeError);
  AuxTargets attr;
  attr.attribute_items.push_back({0, 2});
  EXPECT_THROW(ComputeAuxLosses(h.Inputs(scores, m), attr), std::invalid_argument);
}

TEST(OverallLossTest, WeightedSum) {
  EXPECT_EQ(OverallLoss(1.0, 2.0, 4.0, 8.0, {0.5, 0.25, 0.125}), 1.0 + 1.0 + 1.0 + 1.0);
  EXPECT_EQ(OverallLoss(1.5, 2.0, 4.0, 8.0, {0.0, 0.0, 0.0}), 1.5);
}

TEST(OverallLossTest, ZeroWeightsReproducePerceptionBitwise) {
  Tape tape;
  const double perception = 0.1234567890123;
  const AuxLossVars aux{tape.Constant(Tensor::Scalar(3.3)),
                        tape.Constant(Tensor::Scalar(7.7)),
                        tape.Constant(Tensor::Scalar(1.1))};
  const Var total = OverallLoss(tape, tape.Constant(Tensor::Scalar(perception)),
                                aux, {0.0, 0.0, 0.0});
  EXPECT_EQ(tape.value(total)[0], perception);
}

TEST(OverallLossTest, RejectsBadWeightsAndTerms) {
  EXPECT_THROW(ValidateWeights({-0.1, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(ValidateWeights({0.0, std::nan(""), 0.0}), std::invalid_argument);
  EXPECT_THROW(
      ValidateWeights({0.0, 0.0, std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
  EXPECT_NO_THROW(ValidateWeights({}));
  EXPECT_THROW(OverallLoss(std::nan(""), 0, 0, 0, {}), std::invalid_argument);
  EXPECT_THROW(OverallLoss(0, 0, std::numeric_limits<double>::infinity(), 0, {}),
               std::invalid_argument);
}

TEST(LossWeightsTest, Defaults) {
  const LossWeights w;
  EXPECT_EQ(w.alpha, 0.1);
  EXPECT_EQ(w.beta, 0.05);
  EXPECT_EQ(w.gamma, 0.05);
}

}  // namespace
}  // namespace langaux
