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

#include "langaux/checkpoint.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <limits>

namespace langaux {
namespace {

NamedTensors Sample() {
  return {{"w", Tensor::Matrix(2, 3, {1.0, -0.0, 3.5, 1e-300, -2.25e10,
                                      std::numeric_limits<double>::denorm_min()})},
          {"b", Tensor::Vector({0.1})},
          {"empty", Tensor({0, 4})}};
}

NamedTensorRefs Refs(const NamedTensors &t) {
  NamedTensorRefs r;
  for (const auto &[name, tensor] : t) r.emplace_back(name, &tensor);
  return r;
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  const NamedTensors in = Sample();
  const NamedTensors out = DecodeCheckpoint(EncodeCheckpoint(Refs(in)));
  ASSERT_EQ(out.size(), in.size());
  for (size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(out[i].first, in[i].first);
    EXPECT_EQ(out[i].second.shape(), in[i].second.shape());
    for (int64_t k = 0; k < in[i].second.size(); ++k) {
      EXPECT_EQ(std::signbit(out[i].second[k]), std::signbit(in[i].second[k]));
      EXPECT_EQ(out[i].second[k], in[i].second[k]);
    }
  }
}

TEST(CheckpointTest, HeaderLayout) {
  const std::string bytes = EncodeCheckpoint(Refs(Sample()));
  EXPECT_EQ(bytes.substr(0, 8), "LAXCKPT1");
  EXPECT_EQ(static_cast<uint8_t>(bytes[8]), kCheckpointVersion);
  EXPECT_EQ(static_cast<uint8_t>(bytes[12]), 3);
}

TEST(CheckpointTest, RejectsCorruptInput) {
  const std::string bytes = EncodeCheckpoint(Refs(Sample()));
  EXPECT_THROW(DecodeCheckpoint("NOTACKPT"), CheckpointError);
  EXPECT_THROW(DecodeCheckpoint(""), CheckpointError);
  for (size_t cut : {size_t{10}, size_t{20}, bytes.size() - 1}) {
    EXPECT_THROW(DecodeCheckpoint(bytes.substr(0, cut)), CheckpointError) << cut;
  }
  EXPECT_THROW(DecodeCheckpoint(bytes + "x"), CheckpointError);
  std::string wrong_version = bytes;
  wrong_version[8] = 9;
  EXPECT_THROW(DecodeCheckpoint(wrong_version), CheckpointError);
}

TEST(CheckpointTest, FileRoundTrip) {
  const std::string path = ::testing::TempDir() + "/ckpt_roundtrip.bin";
  const NamedTensors in = Sample();
  SaveCheckpoint(path, Refs(in));
  const NamedTensors out = LoadCheckpoint(path);
  ASSERT_EQ(out.size(), in.size());
  EXPECT_EQ(out[0].second.values(), in[0].second.values());
  std::remove(path.c_str());
  EXPECT_THROW(LoadCheckpoint(path), CheckpointError);
  EXPECT_THROW(SaveCheckpoint("/nonexistent/dir/x.bin", Refs(in)), CheckpointError);
}

}  // namespace
}  // namespace langaux
