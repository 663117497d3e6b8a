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

#ifndef LANGAUX_GRADCHECK_SUITE_H_
#define LANGAUX_GRADCHECK_SUITE_H_

#include <string>
#include <vector>

namespace langaux {

struct GradCheckCase {
  std::string name;
  double tolerance = 0.0;
  // Worst relative error over all seeds.
  double worst = 0.0;
  int worst_seed = 0;
  int seeds = 0;

  bool passed() const { return worst < tolerance; }
};

// Central-difference checks of every differentiable kernel and of the
// end-to-end auxiliary objective (both fusion modes), each over seeds
// 0..num_seeds-1.
std::vector<GradCheckCase> RunGradCheckSuite(int num_seeds = 20);

}  // namespace langaux

#endif  // LANGAUX_GRADCHECK_SUITE_H_
