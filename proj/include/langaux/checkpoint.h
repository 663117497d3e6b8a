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

#ifndef LANGAUX_CHECKPOINT_H_
#define LANGAUX_CHECKPOINT_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "langaux/tensor.h"

namespace langaux {

// Binary parameter file:
//   "LAXCKPT1" | u32 version | u32 count |
//   count x (u32 name_len | name | u32 rank | rank x u32 dim | f64 data...)
// All integers and floats are little-endian.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr uint32_t kCheckpointVersion = 1;

using NamedTensors = std::vector<std::pair<std::string, Tensor>>;
using NamedTensorRefs = std::vector<std::pair<std::string, const Tensor *>>;

std::string EncodeCheckpoint(const NamedTensorRefs &tensors);
NamedTensors DecodeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const std::string &path, const NamedTensorRefs &tensors);
NamedTensors LoadCheckpoint(const std::string &path);

}  // namespace langaux

#endif  // LANGAUX_CHECKPOINT_H_
