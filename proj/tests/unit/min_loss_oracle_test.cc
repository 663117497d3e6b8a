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

#include <gtest/gtest.h>

#include "langaux/aux_losses.h"
#include "support/loss_oracle.h"

namespace langaux {
namespace {

using testing::LossFixture;

constexpr double kTolerance = 1e-12;

TEST(MinLossOracleTest, HundredRandomFixturesMatchExhaustiveEnumeration) {
  int enumerated = 0, skipped = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const LossFixture f = testing::MakeLossFixture(seed);
    ASSERT_LE(f.m, 12);
    ASSERT_LE(f.targets.relation_items.size(), 4u);
    const testing::OracleComparison c = testing::CompareWithOracle(f, kTolerance);
    EXPECT_LT(c.max_abs_error, kTolerance) << "seed " << seed;
    EXPECT_EQ(c.min_property_violations, 0) << "seed " << seed;
    enumerated += c.enumerated;
    skipped += c.skipped_items;
  }
  // The fixture distribution exercises both enumeration and skipping.
  EXPECT_GT(enumerated, 100);
  EXPECT_GT(skipped, 0);
}

TEST(MinLossOracleTest, EnumeratedPairsFollowLexicographicOrder) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const LossFixture f = testing::MakeLossFixture(seed);
    const AuxLossReport r = ComputeAuxLosses(f.Inputs(), f.targets, f.opts);
    for (size_t t = 0; t < f.targets.relation_items.size(); ++t) {
      const RelationItem &item = f.targets.relation_items[t];
      const ItemTrace &trace = r.relation_trace[t];
      size_t k = 0;
      for (int i = 0; i < f.m; ++i) {
        for (int j = 0; j < f.m; ++j) {
          if (i == j ||
              !testing::OracleIsCandidate(f, i, item.subject_class,
                                          f.opts.relation_objectness) ||
              !testing::OracleIsCandidate(f, j, item.object_class,
                                          f.opts.relation_objectness)) {
            continue;
          }
          ASSERT_LT(k, trace.pairs.size()) << "seed " << seed;
          EXPECT_EQ(trace.pairs[k], std::make_pair(i, j));
          EXPECT_NEAR(trace.losses[k], testing::OraclePairLoss(f, item, i, j),
                      kTolerance);
          ++k;
        }
      }
      EXPECT_EQ(k, trace.pairs.size());
      EXPECT_EQ(trace.skipped, k == 0);
      if (k > 0) EXPECT_EQ(trace.loss, trace.losses[trace.argmin]);
    }
  }
}

TEST(MinLossOracleTest, TapeAgreesBitwiseAndRoutesGradientThroughArgmin) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    LossFixture f = testing::MakeLossFixture(seed);
    const AuxLossReport values = ComputeAuxLosses(f.Inputs(), f.targets, f.opts);
    Tape tape;
    AuxModelVars vars;
    vars.relation_w = tape.Param(&f.relation_w);
    vars.relation_b = tape.Param(&f.relation_b);
    vars.attribute_w = tape.Param(&f.attribute_w);
    vars.attribute_b = tape.Param(&f.attribute_b);
    vars.text_w = tape.Param(&f.text_w);
    vars.text_b = tape.Param(&f.text_b);
    const Var fused = tape.Param(&f.fused);
    AuxLossReport report;
    const AuxLossVars aux =
        BuildAuxLosses(tape, vars, tape.Constant(f.f_lang), fused, f.scores,
                       f.objectness, f.targets, f.opts, &report);
    EXPECT_EQ(tape.value(aux.relation)[0], values.relation) << "seed " << seed;
    EXPECT_EQ(tape.value(aux.attribute)[0], values.attribute) << "seed " << seed;
    EXPECT_EQ(tape.value(aux.text)[0], values.text) << "seed " << seed;
    EXPECT_EQ(report.relation_skipped, values.relation_skipped);
    EXPECT_EQ(report.attribute_skipped, values.attribute_skipped);

    tape.Backward(tape.Sum(std::vector<Var>{aux.relation, aux.attribute}));
    std::vector<bool> selected(f.m, false);
    for (const ItemTrace &t : values.relation_trace) {
      if (t.skipped) continue;
      selected[t.pairs[t.argmin].first] = selected[t.pairs[t.argmin].second] = true;
    }
    for (const ItemTrace &t : values.attribute_trace) {
      if (!t.skipped) selected[t.pairs[t.argmin].first] = true;
    }
    if (!f.fused.has_grad()) continue;
    const int width = f.fused.cols();
    for (int i = 0; i < f.m; ++i) {
      if (selected[i]) continue;
      for (int c = 0; c < width; ++c) {
        EXPECT_EQ(f.fused.grad()[i * width + c], 0.0) << "seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace langaux
